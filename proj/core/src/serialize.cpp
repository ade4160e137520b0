#include "latsep/serialize.hpp"

#include "latsep/error.hpp"

namespace latsep {

Json to_json(const Rational& value) { return value.to_string(); }

Json to_json(const IntPoint& point) {
  Json out = Json::array();
  for (auto c : point) {
    out.push_back(c);
  }
  return out;
}

Json to_json(const RatVector& point) {
  Json out = Json::array();
  for (const auto& c : point) {
    out.push_back(to_json(c));
  }
  return out;
}

Json to_json(const std::vector<IntPoint>& points) {
  Json out = Json::array();
  for (const auto& p : points) {
    out.push_back(to_json(p));
  }
  return out;
}

Json to_json(const PointSet& set) { return to_json(set.points()); }

Json to_json(const AffineFunctional& g) {
  return Json{{"normal", to_json(g.normal)}, {"offset", to_json(g.offset)}};
}

Json to_json(const AffineHull& hull) {
  return Json{{"anchor", to_json(hull.anchor)}, {"basis", to_json(hull.basis)}};
}

Json to_json(const AffineSubspace& flat) {
  return Json{{"dimension", flat.dimension()},
              {"anchor", to_json(flat.anchor)},
              {"basis", to_json(flat.basis)}};
}

Json to_json(const SeparatingFlag& flag) {
  Json levels = Json::array();
  for (const auto& g : flag.functionals) {
    levels.push_back(to_json(g));
  }
  return Json{{"dim", flag.dim}, {"functionals", levels}, {"residual", to_string(flag.residual_owner)}};
}

Json to_json(const BlockingFlat& block) {
  Json levels = Json::array();
  for (const auto& g : block.levels) {
    levels.push_back(to_json(g));
  }
  return Json{{"levels", levels},
              {"flat", to_json(block.flat)},
              {"live_A", to_json(block.live_a)},
              {"live_B", to_json(block.live_b)},
              {"common_point", to_json(block.common_point)},
              {"weights_A", to_json(block.weights_a)},
              {"weights_B", to_json(block.weights_b)}};
}

Json to_json(const FlagCertificate& cert) {
  if (const auto* flag = std::get_if<SeparatingFlag>(&cert)) {
    return Json{{"flag", to_json(*flag)}};
  }
  return Json{{"blocking", to_json(std::get<BlockingFlat>(cert))}};
}

Json to_json(const Partition& partition) {
  return Json{{"dim", partition.dim()}, {"A", to_json(partition.a())}, {"B", to_json(partition.b())}};
}

Json to_json(const ParallelogramWitness& w) {
  return Json{{"order", w.order},
              {"A_points", to_json(w.a_points)},
              {"B_points", to_json(w.b_points)},
              {"sum", to_json(w.sum)}};
}

Json to_json(const RayWitness& w) {
  Json colors = Json::array();
  for (auto c : w.colors) {
    colors.push_back(to_string(c));
  }
  return Json{{"base", to_json(w.line.base)},
              {"direction", to_json(w.line.direction)},
              {"trace", to_json(w.line.trace)},
              {"colors", colors}};
}

Json to_json(const KConvexWitness& w) {
  return Json{{"subset", to_json(w.subset)}, {"missing", to_json(w.missing)}};
}

Json to_json(const HoleWitness& w) { return Json{{"missing", to_json(w.missing)}}; }

Json to_json(const CellWitness& w) {
  return Json{{"cell", to_json(w.cell)}, {"vertex", to_json(w.vertex)}};
}

Json to_json(const HoleReport& report) {
  return Json{{"hole", to_json(report.hole)}, {"first_k", report.first_k}};
}

Json to_json(const EqualSumTriple& triple) {
  return Json{{"b1", to_json(triple.b1)}, {"b2", to_json(triple.b2)}, {"b3", to_json(triple.b3)}};
}

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) {
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(field + ": " + e.what());
    }
  }
  throw ParseError(field + ": expected an integer or a \"p/q\" string");
}

IntPoint point_from_json(const Json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) {
    throw ParseError(field + ": expected an array of integers");
  }
  if (j.size() != dim) {
    throw DimensionMismatch(field + ": point has " + std::to_string(j.size()) +
                            " coordinates, expected " + std::to_string(dim));
  }
  IntPoint p(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_number_integer()) {
      throw ParseError(field + "[" + std::to_string(i) + "]: expected an integer");
    }
    p[i] = j[i].get<std::int64_t>();
  }
  return p;
}

AffineFunctional functional_from_json(const Json& j, std::size_t dim, const std::string& field) {
  if (!j.is_object() || !j.contains("normal")) {
    throw ParseError(field + ": expected an object with \"normal\" and \"offset\"");
  }
  const Json& normal = j.at("normal");
  if (!normal.is_array()) {
    throw ParseError(field + ".normal: expected an array");
  }
  if (normal.size() != dim) {
    throw DimensionMismatch(field + ".normal: " + std::to_string(normal.size()) +
                            " coefficients, expected " + std::to_string(dim));
  }
  AffineFunctional g;
  for (std::size_t i = 0; i < dim; ++i) {
    g.normal.push_back(rational_from_json(normal[i], field + ".normal[" + std::to_string(i) + "]"));
  }
  g.offset = j.contains("offset") ? rational_from_json(j.at("offset"), field + ".offset") : Rational(0);
  return g;
}

SeparatingFlag flag_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("flag: expected an object");
  }
  // Accept the output of `separate --json` as is.
  if (j.contains("witness") && j.at("witness").is_object()) {
    return flag_from_json(j.at("witness"));
  }
  if (!j.contains("dim") && j.contains("flag")) {
    return flag_from_json(j.at("flag"));
  }
  if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<std::int64_t>() < 1) {
    throw ParseError("flag.dim: expected a positive integer");
  }
  SeparatingFlag flag;
  flag.dim = j.at("dim").get<std::size_t>();
  if (!j.contains("functionals") || !j.at("functionals").is_array()) {
    throw ParseError("flag.functionals: expected an array");
  }
  const Json& levels = j.at("functionals");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    flag.functionals.push_back(
        functional_from_json(levels[i], flag.dim, "flag.functionals[" + std::to_string(i) + "]"));
  }
  const std::string residual = j.value("residual", std::string("empty"));
  if (residual == "A") {
    flag.residual_owner = Side::A;
  } else if (residual == "B") {
    flag.residual_owner = Side::B;
  } else if (residual == "empty") {
    flag.residual_owner = Side::Empty;
  } else {
    throw ParseError("flag.residual: expected \"A\", \"B\" or \"empty\"");
  }
  return flag;
}

}  // namespace latsep
