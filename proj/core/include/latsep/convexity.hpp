#pragma once

#include <vector>

#include "latsep/geometry.hpp"
#include "latsep/point.hpp"
#include "latsep/verdict.hpp"

namespace latsep {

/// A subset T with |T| <= k+1 whose hull has a lattice point outside the set.
struct KConvexWitness {
  std::vector<IntPoint> subset;
  IntPoint missing;
};

struct HoleWitness {
  IntPoint missing;
};

/// Unit cell z + [0,1]^d and a vertex of conv(S) ∩ cell outside conv(S ∩ corners).
struct CellWitness {
  IntPoint cell;
  RatVector vertex;
};

struct HoleReport {
  IntPoint hole;
  int first_k = 0;

  friend bool operator==(const HoleReport&, const HoleReport&) = default;
};

/// True iff every lattice point in the hull of at most k+1 members belongs to
/// the set. Only affinely independent subsets are enumerated: the hull of a
/// dependent subset is the union of hulls of independent ones.
Verdict<KConvexWitness> is_k_convex(const PointSet& set, int k);

/// Smallest k-convex superset, computed as a closure fixed point.
PointSet k_convex_hull(const PointSet& set, int k);

Verdict<HoleWitness> is_hole_free(const PointSet& set);

/// Decided cell by cell: every vertex of conv(S) ∩ (z + [0,1]^d) must lie in
/// the hull of the set's points among the cell corners. Dimension <= 3.
Verdict<CellWitness> is_integrally_convex(const PointSet& set);

/// Every lattice point of conv(A) outside A with the least k placing it in
/// the k-convex hull of A, in lexicographic order of holes.
std::vector<HoleReport> classify_holes(const PointSet& set);

/// True iff the listed points are affinely independent (exact integer rank).
bool affinely_independent(std::span<const IntPoint> points);

namespace detail {
/// The raw closure loop, without the Carathéodory shortcut for k >= dim.
PointSet k_convex_hull_closure(const PointSet& set, int k);
}  // namespace detail

}  // namespace latsep
