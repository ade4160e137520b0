#pragma once

#include <optional>
#include <vector>

#include "latsep/point.hpp"
#include "latsep/rational.hpp"

namespace latsep {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

/// Reduced row echelon form of a matrix together with its pivot columns.
struct RowEchelon {
  RatMatrix rows;  // nonzero rows only
  std::vector<std::size_t> pivot_columns;
  std::size_t columns = 0;

  [[nodiscard]] std::size_t rank() const { return pivot_columns.size(); }
};

RowEchelon row_reduce(RatMatrix matrix, std::size_t columns);

std::size_t rank(const RatMatrix& matrix, std::size_t columns);

/// Basis of {x | M x = 0}, one vector per free column.
RatMatrix nullspace(const RatMatrix& matrix, std::size_t columns);

/// Some solution of M x = rhs (free variables set to zero), or nullopt if inconsistent.
std::optional<RatVector> solve_linear(const RatMatrix& matrix, const RatVector& rhs,
                                      std::size_t columns);

/// Scales by a positive factor so every entry is an integer with overall gcd 1.
/// The zero vector maps to the zero vector.
IntPoint to_primitive_integer(const RatVector& v);

RatVector to_rat_vector(const IntPoint& p);

Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const RatVector& a, const IntPoint& b);

/// Indices of a maximal affinely independent subset, greedily in input order.
std::vector<std::size_t> affinely_independent_indices(const std::vector<IntPoint>& points);

/// Dimension of the affine hull (-1 for the empty list).
int affine_dimension(const std::vector<IntPoint>& points);

}  // namespace latsep
