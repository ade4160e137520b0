#pragma once

#include <optional>
#include <string>

#include "latsep/conditions.hpp"

namespace latsep::tools {

struct SvgStyle {
  double unit = 40;    // pixels per lattice step
  double margin = 30;
  double radius = 6;
};

/// 2-D picture of a point set or partition: A as filled circles, B as open
/// circles, plain S points as small grey circles. When a flag is given, its
/// first level is drawn as a line across the picture and its second as a
/// square marker on that line. Throws UnsupportedDimension unless dim = 2.
std::string render_svg(const PointSet& set, const std::optional<Partition>& partition,
                       const std::optional<SeparatingFlag>& flag, const SvgStyle& style = {});

}  // namespace latsep::tools
