#include "latsep/convexity.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "latsep/error.hpp"

namespace latsep {
namespace {

template <class Fn>
bool for_each_combination_until(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n || k == 0) {
    return false;
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (fn(std::span<const std::size_t>(idx))) {
      return true;
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) {
      --i;
    }
    if (i == 0) {
      return false;
    }
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) {
      idx[t] = idx[t - 1] + 1;
    }
  }
}

std::vector<IntPoint> gather(const std::vector<IntPoint>& pts, std::span<const std::size_t> idx) {
  std::vector<IntPoint> out;
  out.reserve(idx.size());
  for (auto i : idx) {
    out.push_back(pts[i]);
  }
  return out;
}

// Support of a basic convex combination: affinely independent points whose
// hull contains x.
std::vector<IntPoint> caratheodory_support(const IntPoint& x, const PointSet& set) {
  const auto weights = convex_combination(to_rat_vector(x), set);
  if (!weights) {
    throw InternalError("hole " + x.to_string() + " is not in the hull");
  }
  std::vector<IntPoint> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!(*weights)[i].is_zero()) {
      out.push_back(set[i]);
    }
  }
  return out;
}

}  // namespace

bool affinely_independent(std::span<const IntPoint> points) {
  if (points.size() <= 1) {
    return true;
  }
  const std::size_t d = points[0].dim();
  const std::size_t rows = points.size() - 1;
  if (rows > d) {
    return false;
  }
  // Fraction-free (Bareiss) elimination on the difference vectors.
  std::vector<std::vector<__int128>> m(rows, std::vector<__int128>(d));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      m[r][c] = static_cast<__int128>(points[r + 1][c]) - points[0][c];
    }
  }
  __int128 prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < d && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) {
      ++piv;
    }
    if (piv == rows) {
      continue;
    }
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < d; ++c) {
        __int128 a;
        __int128 b;
        if (__builtin_mul_overflow(m[rank][col], m[r][c], &a) ||
            __builtin_mul_overflow(m[r][col], m[rank][c], &b)) {
          // Rare: fall back to exact rational rank.
          std::vector<IntPoint> pts(points.begin(), points.end());
          return affine_dimension(pts) == static_cast<int>(rows);
        }
        m[r][c] = (a - b) / prev;
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank == rows;
}

Verdict<KConvexWitness> is_k_convex(const PointSet& set, int k) {
  if (k < 1) {
    throw InvalidArgument("k-convexity needs k >= 1");
  }
  if (set.empty()) {
    throw InvalidArgument("k-convexity of an empty set");
  }
  const int affdim = affine_dimension(set.points());
  if (k >= affdim) {
    // Carathéodory: hulls of k+1 points already cover conv(S).
    auto hole = is_hole_free(set);
    if (hole.holds) {
      return Verdict<KConvexWitness>::pass();
    }
    const IntPoint& missing = hole.witness->missing;
    return Verdict<KConvexWitness>::fail({caratheodory_support(missing, set), missing});
  }
  std::optional<KConvexWitness> found;
  const auto& pts = set.points();
  const std::size_t max_size = static_cast<std::size_t>(k) + 1;
  for (std::size_t s = 2; s <= max_size && !found; ++s) {
    for_each_combination_until(pts.size(), s, [&](std::span<const std::size_t> idx) {
      auto subset = gather(pts, idx);
      if (!affinely_independent(subset)) {
        return false;
      }
      for (auto& p : lattice_points_in_simplex(subset)) {
        if (!set.contains(p)) {
          found = KConvexWitness{std::move(subset), std::move(p)};
          return true;
        }
      }
      return false;
    });
  }
  if (found) {
    return Verdict<KConvexWitness>::fail(std::move(*found));
  }
  return Verdict<KConvexWitness>::pass();
}

namespace detail {

PointSet k_convex_hull_closure(const PointSet& set, int k) {
  std::vector<IntPoint> pts = set.points();
  std::unordered_set<IntPoint> seen(pts.begin(), pts.end());
  const std::size_t max_size = static_cast<std::size_t>(k) + 1;
  std::size_t frontier = 0;  // points at index >= frontier were added in the last pass
  while (frontier < pts.size()) {
    const std::size_t n = pts.size();
    std::vector<IntPoint> added;
    std::vector<IntPoint> subset;
    // Subsets that contain at least one new point: the largest index is new.
    for (std::size_t last = std::max<std::size_t>(frontier, 1); last < n; ++last) {
      for (std::size_t s = 2; s <= max_size && s <= last + 1; ++s) {
        for_each_combination_until(last, s - 1, [&](std::span<const std::size_t> idx) {
          subset = gather(pts, idx);
          subset.push_back(pts[last]);
          if (!affinely_independent(subset)) {
            return false;
          }
          for (auto& p : lattice_points_in_simplex(subset)) {
            if (seen.insert(p).second) {
              added.push_back(std::move(p));
            }
          }
          return false;
        });
      }
    }
    frontier = n;
    std::sort(added.begin(), added.end());
    pts.insert(pts.end(), added.begin(), added.end());
  }
  return PointSet(set.dim(), std::move(pts));
}

}  // namespace detail

PointSet k_convex_hull(const PointSet& set, int k) {
  if (k < 1) {
    throw InvalidArgument("k-convex hull needs k >= 1");
  }
  if (set.empty()) {
    throw InvalidArgument("k-convex hull of an empty set");
  }
  if (k >= affine_dimension(set.points())) {
    return lattice_points_in_conv(set);
  }
  return detail::k_convex_hull_closure(set, k);
}

Verdict<HoleWitness> is_hole_free(const PointSet& set) {
  const PointSet full = lattice_points_in_conv(set);
  for (const auto& p : full) {
    if (!set.contains(p)) {
      return Verdict<HoleWitness>::fail({p});
    }
  }
  return Verdict<HoleWitness>::pass();
}

namespace {

struct IntConstraint {
  IntPoint normal;  // normal . x >= offset
  Coord offset;
};

// Solves the d x d integer system normal_i . x = offset_i by Cramer's rule.
// Returns false when singular; otherwise x = num / den with den > 0.
bool cramer(const std::vector<const IntConstraint*>& rows, std::vector<__int128>& num, __int128& den) {
  const std::size_t d = rows.size();
  auto det = [&](auto&& entry) -> __int128 {
    if (d == 1) {
      return entry(0, 0);
    }
    if (d == 2) {
      return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
    }
    return entry(0, 0) * (entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1)) -
           entry(0, 1) * (entry(1, 0) * entry(2, 2) - entry(1, 2) * entry(2, 0)) +
           entry(0, 2) * (entry(1, 0) * entry(2, 1) - entry(1, 1) * entry(2, 0));
  };
  den = det([&](std::size_t r, std::size_t c) -> __int128 { return rows[r]->normal[c]; });
  if (den == 0) {
    return false;
  }
  num.assign(d, 0);
  for (std::size_t col = 0; col < d; ++col) {
    num[col] = det([&](std::size_t r, std::size_t c) -> __int128 {
      return c == col ? rows[r]->offset : rows[r]->normal[c];
    });
  }
  if (den < 0) {
    den = -den;
    for (auto& x : num) {
      x = -x;
    }
  }
  return true;
}

}  // namespace

Verdict<CellWitness> is_integrally_convex(const PointSet& set) {
  if (set.empty()) {
    throw InvalidArgument("integral convexity of an empty set");
  }
  const std::size_t d = set.dim();
  if (d > 3) {
    throw UnsupportedDimension("integral convexity supports dimension <= 3, got " +
                               std::to_string(d));
  }
  std::vector<IntConstraint> hull;
  for (const auto& f : hull_facets(set)) {
    hull.push_back({to_primitive_integer(f.normal), f.offset.floor()});
  }
  const auto [lo, hi] = set.bounding_box();
  IntPoint cell_hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    cell_hi[i] = std::max(lo[i], hi[i] - 1);
  }

  for (const auto& z : box_points(lo, cell_hi)) {
    std::vector<IntConstraint> cons = hull;
    for (std::size_t i = 0; i < d; ++i) {
      IntPoint e(d);
      e[i] = 1;
      cons.push_back({e, z[i]});
      e[i] = -1;
      cons.push_back({e, -(z[i] + 1)});
    }
    // Vertices of conv(S) ∩ cell: feasible intersections of d constraints.
    std::vector<std::pair<std::vector<__int128>, __int128>> vertices;
    std::vector<const IntConstraint*> rows(d);
    std::vector<__int128> num;
    __int128 den = 0;
    for_each_combination_until(cons.size(), d, [&](std::span<const std::size_t> idx) {
      for (std::size_t r = 0; r < d; ++r) {
        rows[r] = &cons[idx[r]];
      }
      if (!cramer(rows, num, den)) {
        return false;
      }
      for (const auto& c : cons) {
        __int128 lhs = 0;
        for (std::size_t i = 0; i < d; ++i) {
          lhs += static_cast<__int128>(c.normal[i]) * num[i];
        }
        if (lhs < static_cast<__int128>(c.offset) * den) {
          return false;
        }
      }
      // Normalize num/den to compare vertices exactly.
      __int128 g = den;
      for (auto x : num) {
        __int128 a = x < 0 ? -x : x;
        __int128 b = g;
        while (b != 0) {
          __int128 t = a % b;
          a = b;
          b = t;
        }
        g = a;
      }
      for (auto& x : num) {
        x /= g;
      }
      vertices.emplace_back(num, den / g);
      return false;
    });
    if (vertices.empty()) {
      continue;
    }
    std::vector<IntPoint> corner_pts;
    for (const auto& p : set) {
      bool inside = true;
      for (std::size_t i = 0; i < d; ++i) {
        inside &= p[i] >= z[i] && p[i] <= z[i] + 1;
      }
      if (inside) {
        corner_pts.push_back(p);
      }
    }
    const bool full_cell = corner_pts.size() == (std::size_t{1} << d);
    const PointSet corners(d, std::move(corner_pts));
    std::vector<RatVector> bad;
    for (const auto& [vn, vd] : vertices) {
      RatVector v;
      for (auto x : vn) {
        v.emplace_back(static_cast<std::int64_t>(x), static_cast<std::int64_t>(vd));
      }
      if (full_cell) {
        continue;
      }
      if (corners.empty() || !point_in_conv(v, corners)) {
        bad.push_back(std::move(v));
      }
    }
    if (!bad.empty()) {
      std::sort(bad.begin(), bad.end());
      return Verdict<CellWitness>::fail({z, bad.front()});
    }
  }
  return Verdict<CellWitness>::pass();
}

std::vector<HoleReport> classify_holes(const PointSet& set) {
  if (set.empty()) {
    throw InvalidArgument("hole classification of an empty set");
  }
  const PointSet holes = lattice_points_in_conv(set).set_difference(set);
  std::vector<HoleReport> out;
  if (holes.empty()) {
    return out;
  }
  std::vector<int> first(holes.size(), 0);
  std::size_t remaining = holes.size();
  const int cap = static_cast<int>(set.dim());
  for (int k = 1; k <= cap && remaining > 0; ++k) {
    const PointSet hull = k_convex_hull(set, k);
    for (std::size_t i = 0; i < holes.size(); ++i) {
      if (first[i] == 0 && hull.contains(holes[i])) {
        first[i] = k;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    throw InternalError("a hole is missing from the d-convex hull");
  }
  for (std::size_t i = 0; i < holes.size(); ++i) {
    out.push_back({holes[i], first[i]});
  }
  return out;
}

}  // namespace latsep
