#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "latsep/conditions.hpp"
#include "latsep/serialize.hpp"

namespace latsep {

/// A parsed input file: a point set S, and a partition when A (and B) are given.
///
/// Top-level keys: "dim", then either "S" alone, "A" and "B", or "S" and "A"
/// (B defaults to S \ A), or "window": {"radius": r, "rule": "sqrt2" | "lex"}.
/// A top-level "simplex", "hull", "box" or "k_hull" key is shorthand for S.
/// Every set is a list of integer vectors or a generator object:
///   {"simplex": [pts]} / {"hull": [pts]}   lattice points of the convex hull
///   {"box": [lo, hi]}                      lattice points of a box
///   {"k_hull": {"points": [pts], "k": k}}  k-convex hull
///   {"union": [sets]}, {"minus": [set, set]}
///   {"ref": "S" | "A" | "B"}               a set defined earlier in the file
struct Instance {
  std::size_t dim = 0;
  PointSet set;
  std::optional<Partition> partition;
};

Instance instance_from_json(const Json& j);

/// A set expression evaluated against an instance: "S", "A", "B" (or a "ref"
/// to them) name its sets; anything else is a list or generator as above.
PointSet set_from_json(const Json& j, const Instance& context, const std::string& field);

/// Parses text; syntax errors report the line, field errors the field path.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

SeparatingFlag parse_flag(std::string_view text);
SeparatingFlag load_flag(const std::filesystem::path& path);

/// Parses JSON text, turning syntax errors into ParseError with a line number.
Json parse_json_text(std::string_view text, const std::string& source);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace latsep
