#pragma once

#include "latsep/conditions.hpp"
#include "latsep/constructions.hpp"
#include "latsep/convexity.hpp"
#include "latsep/third_party/json.hpp"

namespace latsep {

using Json = nlohmann::ordered_json;

// Rationals serialize as "p/q" strings (or "p"); points as integer arrays.
Json to_json(const Rational& value);
Json to_json(const IntPoint& point);
Json to_json(const RatVector& point);
Json to_json(const PointSet& set);
Json to_json(const std::vector<IntPoint>& points);
Json to_json(const AffineFunctional& g);
Json to_json(const AffineHull& hull);
Json to_json(const AffineSubspace& flat);
Json to_json(const SeparatingFlag& flag);
Json to_json(const BlockingFlat& block);
Json to_json(const Partition& partition);
Json to_json(const ParallelogramWitness& w);
Json to_json(const RayWitness& w);
Json to_json(const KConvexWitness& w);
Json to_json(const HoleWitness& w);
Json to_json(const CellWitness& w);
Json to_json(const HoleReport& report);
Json to_json(const EqualSumTriple& triple);

template <class W>
Json to_json(const Verdict<W>& v) {
  Json out;
  out["holds"] = v.holds;
  out["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return out;
}

Json to_json(const FlagCertificate& cert);

/// Accepts an integer or a "p/q" string. Throws ParseError.
Rational rational_from_json(const Json& j, const std::string& field);
IntPoint point_from_json(const Json& j, std::size_t dim, const std::string& field);
AffineFunctional functional_from_json(const Json& j, std::size_t dim, const std::string& field);

/// {"dim": d, "functionals": [{"normal": [...], "offset": "p/q"}, ...],
///  "residual": "A" | "B" | "empty"}, optionally wrapped as {"flag": ...} or
/// in a verdict {"holds": ..., "witness": ...}. Structural validity is not
/// checked here.
SeparatingFlag flag_from_json(const Json& j);

}  // namespace latsep
