#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latsep/linalg.hpp"
#include "latsep/point.hpp"

namespace latsep {

/// g(x) = <normal, x> - offset.
struct AffineFunctional {
  RatVector normal;
  Rational offset;

  AffineFunctional() = default;
  AffineFunctional(RatVector n, Rational off) : normal(std::move(n)), offset(std::move(off)) {}
  static AffineFunctional from_integers(const IntPoint& normal, Coord offset);

  [[nodiscard]] std::size_t dim() const { return normal.size(); }
  [[nodiscard]] Rational operator()(const IntPoint& x) const;
  [[nodiscard]] Rational operator()(const RatVector& x) const;
  [[nodiscard]] int sign_at(const IntPoint& x) const { return (*this)(x).sign(); }
  [[nodiscard]] bool is_constant() const;

  /// Positive rescaling to integer coefficients with gcd 1 (zero stays zero).
  [[nodiscard]] AffineFunctional normalized() const;

  [[nodiscard]] AffineFunctional operator-() const { return {negated(normal), -offset}; }
  AffineFunctional& operator+=(const AffineFunctional& rhs);

  friend bool operator==(const AffineFunctional&, const AffineFunctional&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  static RatVector negated(const RatVector& v);
};

/// anchor + span(basis); basis vectors are primitive integer directions.
struct AffineHull {
  IntPoint anchor;
  std::vector<IntPoint> basis;

  [[nodiscard]] std::size_t dimension() const { return basis.size(); }
};

AffineHull affine_hull_basis(const PointSet& set);

/// Convex weights (one per point of `set`, in set order) expressing x, or nullopt.
std::optional<RatVector> convex_combination(const RatVector& x, const PointSet& set);

bool point_in_conv(const RatVector& x, const PointSet& set);
bool point_in_conv(const IntPoint& x, const PointSet& set);

/// conv(set) as {x | g(x) >= 0 for every returned g}. When the hull is not
/// full-dimensional the affine hull appears as pairs of opposite functionals.
/// Only ambient dimension <= 3 is supported (UnsupportedDimension otherwise).
std::vector<AffineFunctional> hull_facets(const PointSet& set);

/// conv(set) intersected with Z^d. Filters the integer bounding box by facet
/// inequalities when dim <= 3 and by linear feasibility otherwise.
PointSet lattice_points_in_conv(const PointSet& set);

/// Same result, always through linear feasibility per box point.
PointSet lattice_points_in_conv_by_lp(const PointSet& set);

/// Lattice points of conv(vertices) for affinely independent vertices,
/// by exact barycentric coordinates over a projected bounding box.
std::vector<IntPoint> lattice_points_in_simplex(std::span<const IntPoint> vertices);

struct LatticeLine {
  IntPoint base;       // first point of the trace
  IntPoint direction;  // primitive, first nonzero entry positive
  std::vector<IntPoint> trace;  // points of the set on the line, increasing parameter
};

/// Every line meeting the set in at least two points, each exactly once,
/// ordered by (direction, base).
std::vector<LatticeLine> lines_through(const PointSet& set);

}  // namespace latsep
