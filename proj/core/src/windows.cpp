#include "latsep/windows.hpp"

#include "latsep/error.hpp"

namespace latsep {

int sqrt2_side(Coord x1, Coord x2) {
  // Compare x2 with sqrt(2) x1 through squares, minding signs.
  const __int128 lhs = static_cast<__int128>(x2) * x2;
  const __int128 rhs = 2 * static_cast<__int128>(x1) * x1;
  if (x1 == 0) {
    return x2 > 0 ? 1 : (x2 < 0 ? -1 : 0);
  }
  if (x1 > 0) {
    return x2 > 0 && lhs > rhs ? 1 : -1;
  }
  return x2 >= 0 || lhs < rhs ? 1 : -1;
}

Partition window_partition(WindowRule rule, Coord radius) {
  if (radius < 1) {
    throw InvalidArgument("window radius must be positive");
  }
  PointSet a(2);
  PointSet b(2);
  for (const auto& p : box_points(IntPoint{-radius, -radius}, IntPoint{radius, radius})) {
    bool in_a = false;
    switch (rule) {
      case WindowRule::Sqrt2HalfPlane:
        in_a = sqrt2_side(p[0], p[1]) >= 0;
        break;
      case WindowRule::LexHalfPlane:
        in_a = p[0] > 0 || (p[0] == 0 && p[1] >= 0);
        break;
    }
    (in_a ? a : b).insert(p);
  }
  return {std::move(a), std::move(b)};
}

SeparatingFlag sqrt2_convergent_flag(Coord radius) {
  const Partition window = window_partition(WindowRule::Sqrt2HalfPlane, radius);
  // Convergents of [1; 2, 2, 2, ...].
  Coord p_prev = 1;
  Coord q_prev = 0;
  Coord p = 1;
  Coord q = 1;
  while (true) {
    SeparatingFlag flag;
    flag.dim = 2;
    flag.functionals.push_back(AffineFunctional({Rational(-p), Rational(q)}, Rational(0)));
    flag.residual_owner = Side::A;
    if (verify_flag(window, flag)) {
      return flag;
    }
    const Coord p_next = checked_add(checked_mul(2, p), p_prev);
    const Coord q_next = checked_add(checked_mul(2, q), q_prev);
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
}

SeparatingFlag lex_half_plane_flag() {
  SeparatingFlag flag;
  flag.dim = 2;
  flag.functionals.push_back(AffineFunctional::from_integers(IntPoint{1, 0}, 0));
  flag.functionals.push_back(AffineFunctional::from_integers(IntPoint{0, 1}, 0));
  flag.residual_owner = Side::A;
  return flag;
}

}  // namespace latsep
