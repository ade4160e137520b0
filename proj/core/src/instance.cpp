#include "latsep/instance.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "latsep/convexity.hpp"
#include "latsep/error.hpp"
#include "latsep/windows.hpp"

namespace latsep {

namespace {

using Named = std::map<std::string, PointSet>;

std::vector<IntPoint> points_from_json(const Json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) {
    throw ParseError(field + ": expected a list of points");
  }
  std::vector<IntPoint> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(point_from_json(j[i], dim, field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

PointSet set_from_json(const Json& j, std::size_t dim, const std::string& field,
                       const Named& named) {
  if (j.is_array()) {
    return PointSet(dim, points_from_json(j, dim, field));
  }
  if (!j.is_object() || j.size() != 1) {
    throw ParseError(field + ": expected a point list or a one-key generator object");
  }
  const std::string key = j.begin().key();
  const Json& arg = j.begin().value();
  const std::string sub = field + "." + key;
  if (key == "simplex" || key == "hull") {
    const PointSet vertices(dim, points_from_json(arg, dim, sub));
    if (vertices.empty()) {
      throw ParseError(sub + ": needs at least one point");
    }
    return lattice_points_in_conv(vertices);
  }
  if (key == "box") {
    if (!arg.is_array() || arg.size() != 2) {
      throw ParseError(sub + ": expected [lo, hi]");
    }
    const IntPoint lo = point_from_json(arg[0], dim, sub + "[0]");
    const IntPoint hi = point_from_json(arg[1], dim, sub + "[1]");
    return box_points(lo, hi);
  }
  if (key == "k_hull") {
    if (!arg.is_object() || !arg.contains("points") || !arg.contains("k") ||
        !arg.at("k").is_number_integer() || arg.at("k").get<int>() < 1) {
      throw ParseError(sub + ": expected {\"points\": [...], \"k\": positive integer}");
    }
    const PointSet base(dim, points_from_json(arg.at("points"), dim, sub + ".points"));
    if (base.empty()) {
      throw ParseError(sub + ".points: needs at least one point");
    }
    return k_convex_hull(base, arg.at("k").get<int>());
  }
  if (key == "union") {
    if (!arg.is_array()) {
      throw ParseError(sub + ": expected a list of sets");
    }
    PointSet out(dim);
    for (std::size_t i = 0; i < arg.size(); ++i) {
      out = out.set_union(set_from_json(arg[i], dim, sub + "[" + std::to_string(i) + "]", named));
    }
    return out;
  }
  if (key == "minus") {
    if (!arg.is_array() || arg.size() != 2) {
      throw ParseError(sub + ": expected [set, set]");
    }
    return set_from_json(arg[0], dim, sub + "[0]", named)
        .set_difference(set_from_json(arg[1], dim, sub + "[1]", named));
  }
  if (key == "ref") {
    if (!arg.is_string() || !named.contains(arg.get<std::string>())) {
      throw ParseError(sub + ": must name a set defined earlier (S before A before B)");
    }
    return named.at(arg.get<std::string>());
  }
  throw ParseError(field + ": unknown generator \"" + key + "\"");
}

}  // namespace

PointSet set_from_json(const Json& j, const Instance& context, const std::string& field) {
  Named named{{"S", context.set}};
  if (context.partition) {
    named["A"] = context.partition->a();
    named["B"] = context.partition->b();
  }
  if (j.is_string()) {
    if (!named.contains(j.get<std::string>())) {
      throw ParseError(field + ": unknown set name \"" + j.get<std::string>() + "\"");
    }
    return named.at(j.get<std::string>());
  }
  return set_from_json(j, context.dim, field, named);
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("instance: expected an object");
  }
  if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<std::int64_t>() < 1) {
    throw ParseError("dim: expected a positive integer");
  }
  Instance out;
  out.dim = j.at("dim").get<std::size_t>();
  if (j.contains("window")) {
    const Json& w = j.at("window");
    if (out.dim != 2 || !w.is_object() || !w.contains("radius") || !w.at("radius").is_number_integer()) {
      throw ParseError("window: expected {\"radius\": r, \"rule\": \"sqrt2\" | \"lex\"} with dim 2");
    }
    const std::string rule = w.value("rule", std::string());
    WindowRule r;
    if (rule == "sqrt2") {
      r = WindowRule::Sqrt2HalfPlane;
    } else if (rule == "lex") {
      r = WindowRule::LexHalfPlane;
    } else {
      throw ParseError("window.rule: expected \"sqrt2\" or \"lex\"");
    }
    out.partition = window_partition(r, w.at("radius").get<Coord>());
    out.set = out.partition->all();
    return out;
  }
  Named named;
  std::optional<PointSet> s;
  // Top-level generator shorthand for S, e.g. {"dim": 3, "simplex": [...]}.
  for (const char* key : {"simplex", "hull", "box", "k_hull"}) {
    if (j.contains(key)) {
      if (j.contains("S") || s) {
        throw ParseError(std::string(key) + ": give S either directly or as a generator, not both");
      }
      s = set_from_json(Json{{key, j.at(key)}}, out.dim, key, named);
    }
  }
  if (s) {
    named["S"] = *s;
  }
  std::optional<PointSet> a;
  std::optional<PointSet> b;
  if (!s && j.contains("S")) {
    s = set_from_json(j.at("S"), out.dim, "S", named);
    named["S"] = *s;
  }
  if (j.contains("A")) {
    a = set_from_json(j.at("A"), out.dim, "A", named);
    named["A"] = *a;
  }
  if (j.contains("B")) {
    b = set_from_json(j.at("B"), out.dim, "B", named);
  } else if (a && s) {
    if (!a->is_subset_of(*s)) {
      throw ParseError("A: must be a subset of S when B is omitted");
    }
    b = s->set_difference(*a);
  }
  if (a.has_value() != b.has_value()) {
    throw ParseError(a ? "B: missing (give B, or S so that B = S \\ A)" : "A: missing");
  }
  if (a) {
    if (a->empty()) {
      throw ParseError("A: must be nonempty");
    }
    if (b->empty()) {
      throw ParseError("B: must be nonempty");
    }
    const PointSet common = a->set_intersection(*b);
    if (!common.empty()) {
      throw ParseError("A and B intersect at " + common[0].to_string());
    }
    out.partition = Partition(*a, *b);
    out.set = out.partition->all();
    if (s && !(*s == out.set)) {
      throw ParseError("S: differs from the union of A and B");
    }
    return out;
  }
  if (!s) {
    throw ParseError("instance: needs \"S\", \"A\" and \"B\", or \"window\"");
  }
  if (s->empty()) {
    throw ParseError("S: must be nonempty");
  }
  out.set = *s;
  return out;
}

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ": malformed JSON");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path.string() + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance parse_instance(std::string_view text) {
  return instance_from_json(parse_json_text(text, "instance"));
}

Instance load_instance(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return instance_from_json(parse_json_text(text, path.string()));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    throw ParseError(what.starts_with(path.string()) ? what : path.string() + ": " + what);
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(path.string() + ": " + e.what());
  }
}

SeparatingFlag parse_flag(std::string_view text) {
  return flag_from_json(parse_json_text(text, "flag"));
}

SeparatingFlag load_flag(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return flag_from_json(parse_json_text(text, path.string()));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    throw ParseError(what.starts_with(path.string()) ? what : path.string() + ": " + what);
  }
}

}  // namespace latsep
