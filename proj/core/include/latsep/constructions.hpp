#pragma once

#include <array>
#include <vector>

#include "latsep/point.hpp"

namespace latsep {

/// Lattice triangle in Z^2 whose edges contain no lattice points besides the
/// vertices.
class MinimalTriangle {
 public:
  /// Throws DimensionMismatch for points outside Z^2, InvalidArgument for
  /// collinear vertices or an edge with an interior lattice point.
  MinimalTriangle(IntPoint a1, IntPoint a2, IntPoint a3);

  [[nodiscard]] const IntPoint& a1() const { return v_[0]; }
  [[nodiscard]] const IntPoint& a2() const { return v_[1]; }
  [[nodiscard]] const IntPoint& a3() const { return v_[2]; }
  [[nodiscard]] const std::array<IntPoint, 3>& vertices() const { return v_; }

  /// Lattice points of the triangle other than its vertices (all interior).
  [[nodiscard]] std::vector<IntPoint> interior_points() const;

  friend bool operator==(const MinimalTriangle&, const MinimalTriangle&) = default;

 private:
  std::array<IntPoint, 3> v_;
};

struct EqualSumTriple {
  IntPoint b1;
  IntPoint b2;
  IntPoint b3;
};

/// Interior points b1, b2, b3 with a1 + a2 + a3 = b1 + b2 + b3, built from the
/// two extremal interior points: b1 maximizes <b - a1, a2'> and b2 maximizes
/// <b - a2, a1'>, where (after moving a3 to the origin) ai' is orthogonal to
/// ai and oriented toward the other vertex. Ties go to the lexicographically
/// smallest point. Throws NoInteriorPoints when the triangle is empty.
EqualSumTriple lemma49_triple(const MinimalTriangle& triangle);

/// Triangles with vertices in A (sorted vertex order, lexicographic listing)
/// whose edges are lattice-free and which contain no other point of A.
std::vector<MinimalTriangle> find_minimal_triangles(const PointSet& set);

}  // namespace latsep
