#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "latsep/error.hpp"

namespace latsep::tools {

namespace {

double to_double(const Rational& r) { return r.to_double(); }

struct Frame {
  double lo_x, lo_y, hi_x, hi_y;  // lattice coordinates, padded by half a step
  SvgStyle style;

  [[nodiscard]] double width() const { return (hi_x - lo_x) * style.unit + 2 * style.margin; }
  [[nodiscard]] double height() const { return (hi_y - lo_y) * style.unit + 2 * style.margin; }
  [[nodiscard]] double px(double x) const { return style.margin + (x - lo_x) * style.unit; }
  [[nodiscard]] double py(double y) const { return style.margin + (hi_y - y) * style.unit; }
};

// Segment of {n.x = c} inside the frame box, if it crosses it.
std::optional<std::pair<std::pair<double, double>, std::pair<double, double>>> clip_line(
    double nx, double ny, double c, const Frame& f) {
  std::vector<std::pair<double, double>> hits;
  auto add = [&](double x, double y) {
    const double eps = 1e-9;
    if (x >= f.lo_x - eps && x <= f.hi_x + eps && y >= f.lo_y - eps && y <= f.hi_y + eps) {
      hits.emplace_back(x, y);
    }
  };
  if (ny != 0) {
    add(f.lo_x, (c - nx * f.lo_x) / ny);
    add(f.hi_x, (c - nx * f.hi_x) / ny);
  }
  if (nx != 0) {
    add((c - ny * f.lo_y) / nx, f.lo_y);
    add((c - ny * f.hi_y) / nx, f.hi_y);
  }
  if (hits.size() < 2) {
    return std::nullopt;
  }
  auto far = std::max_element(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
    return std::hypot(a.first - hits[0].first, a.second - hits[0].second) <
           std::hypot(b.first - hits[0].first, b.second - hits[0].second);
  });
  return std::make_pair(hits[0], *far);
}

}  // namespace

std::string render_svg(const PointSet& set, const std::optional<Partition>& partition,
                       const std::optional<SeparatingFlag>& flag, const SvgStyle& style) {
  if (set.dim() != 2) {
    throw UnsupportedDimension("plots are two-dimensional only");
  }
  if (set.empty()) {
    throw InvalidArgument("nothing to plot");
  }
  const auto [lo, hi] = set.bounding_box();
  const Frame f{static_cast<double>(lo[0]) - 0.5, static_cast<double>(lo[1]) - 0.5,
                static_cast<double>(hi[0]) + 0.5, static_cast<double>(hi[1]) + 0.5, style};

  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f.width() << "\" height=\""
      << f.height() << "\" viewBox=\"0 0 " << f.width() << " " << f.height() << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << f.width() << "\" height=\"" << f.height()
      << "\" fill=\"white\"/>\n";

  if (flag && !flag->functionals.empty()) {
    const auto& g1 = flag->functionals[0];
    const double nx = to_double(g1.normal[0]);
    const double ny = to_double(g1.normal[1]);
    const double c = to_double(g1.offset);
    if (auto seg = clip_line(nx, ny, c, f)) {
      out << "<line class=\"level1\" x1=\"" << f.px(seg->first.first) << "\" y1=\"" << f.py(seg->first.second)
          << "\" x2=\"" << f.px(seg->second.first) << "\" y2=\"" << f.py(seg->second.second)
          << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    }
    if (flag->functionals.size() > 1) {
      // Point of the first line where the second functional vanishes.
      const auto& g2 = flag->functionals[1];
      const double mx = to_double(g2.normal[0]);
      const double my = to_double(g2.normal[1]);
      const double d = to_double(g2.offset);
      const double det = nx * my - ny * mx;
      if (det != 0) {
        const double x = (c * my - ny * d) / det;
        const double y = (nx * d - c * mx) / det;
        const double s = style.radius;
        out << "<rect class=\"level2\" x=\"" << f.px(x) - s / 2 << "\" y=\"" << f.py(y) - s / 2 << "\" width=\"" << s
            << "\" height=\"" << s << "\" fill=\"#c0392b\"/>\n";
      }
    }
  }

  for (const auto& p : set) {
    const double x = f.px(static_cast<double>(p[0]));
    const double y = f.py(static_cast<double>(p[1]));
    const Side side = partition ? partition->side_of(p) : Side::Empty;
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" ";
    if (side == Side::A) {
      out << "r=\"" << style.radius << "\" fill=\"black\" stroke=\"black\"";
    } else if (side == Side::B) {
      out << "r=\"" << style.radius << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"";
    } else {
      out << "r=\"" << style.radius / 2 << "\" fill=\"grey\"";
    }
    out << "><title>" << p.to_string() << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace latsep::tools
