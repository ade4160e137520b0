#pragma once

#include "latsep/conditions.hpp"

namespace latsep {

/// Finite windows [-r, r]^2 of two infinite partitions of Z^2.
enum class WindowRule {
  /// A = {x2 >= sqrt(2) x1}; the boundary line has irrational slope.
  Sqrt2HalfPlane,
  /// A = {x1 > 0} ∪ {x1 = 0, x2 >= 0}.
  LexHalfPlane,
};

Partition window_partition(WindowRule rule, Coord radius);

/// Sign of x2 - sqrt(2) x1, decided in integers (never zero off the origin).
int sqrt2_side(Coord x1, Coord x2);

/// g = q x2 - p x1 for the first continued-fraction convergent p/q of sqrt(2)
/// whose line classifies every window point like the irrational line does;
/// only the origin may lie on it, and it is owned by A.
SeparatingFlag sqrt2_convergent_flag(Coord radius);

/// g1 = x1, g2 = x2, residual owned by A.
SeparatingFlag lex_half_plane_flag();

}  // namespace latsep
