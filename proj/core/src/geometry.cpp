#include "latsep/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "latsep/error.hpp"
#include "latsep/lp.hpp"

namespace latsep {

AffineFunctional AffineFunctional::from_integers(const IntPoint& normal, Coord offset) {
  return {to_rat_vector(normal), Rational(offset)};
}

Rational AffineFunctional::operator()(const IntPoint& x) const {
  return dot(normal, x) - offset;
}

Rational AffineFunctional::operator()(const RatVector& x) const { return dot(normal, x) - offset; }

bool AffineFunctional::is_constant() const {
  return std::all_of(normal.begin(), normal.end(), [](const Rational& c) { return c.is_zero(); });
}

RatVector AffineFunctional::negated(const RatVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    out.push_back(-x);
  }
  return out;
}

AffineFunctional AffineFunctional::normalized() const {
  RatVector all = normal;
  all.push_back(offset);
  const IntPoint scaled = to_primitive_integer(all);
  AffineFunctional out;
  out.normal.reserve(normal.size());
  for (std::size_t i = 0; i < normal.size(); ++i) {
    out.normal.emplace_back(scaled[i]);
  }
  out.offset = Rational(scaled[normal.size()]);
  return out;
}

AffineFunctional& AffineFunctional::operator+=(const AffineFunctional& rhs) {
  if (rhs.dim() != dim()) {
    throw DimensionMismatch("adding functionals of different dimension");
  }
  for (std::size_t i = 0; i < normal.size(); ++i) {
    normal[i] += rhs.normal[i];
  }
  offset += rhs.offset;
  return *this;
}

std::string AffineFunctional::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (normal[i].is_zero()) {
      continue;
    }
    const bool negative = normal[i].sign() < 0;
    const Rational mag = negative ? -normal[i] : normal[i];
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != Rational(1)) {
      out += mag.to_string() + "*";
    }
    out += "x" + std::to_string(i + 1);
  }
  if (out.empty()) {
    out = "0";
  }
  if (!offset.is_zero()) {
    out += offset.sign() > 0 ? " - " + offset.to_string() : " + " + (-offset).to_string();
  }
  return out;
}

AffineHull affine_hull_basis(const PointSet& set) {
  if (set.empty()) {
    throw InvalidArgument("affine hull of an empty set");
  }
  const auto chosen = affinely_independent_indices(set.points());
  AffineHull out;
  out.anchor = set[chosen[0]];
  for (std::size_t i = 1; i < chosen.size(); ++i) {
    out.basis.push_back(primitive_direction(set[chosen[i]] - out.anchor));
  }
  return out;
}

std::optional<RatVector> convex_combination(const RatVector& x, const PointSet& set) {
  if (set.empty()) {
    throw InvalidArgument("convex hull of an empty set");
  }
  if (x.size() != set.dim()) {
    throw DimensionMismatch("point of dimension " + std::to_string(x.size()) +
                            " tested against a set of dimension " + std::to_string(set.dim()));
  }
  const std::size_t n = set.size();
  LinearProgram lp;
  lp.num_vars = n;
  lp.add(RatVector(n, Rational(1)), Relation::Equal, Rational(1));
  for (std::size_t i = 0; i < set.dim(); ++i) {
    RatVector row(n);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = Rational(set[j][i]);
    }
    lp.add(std::move(row), Relation::Equal, x[i]);
  }
  LpResult res = solve(lp);
  if (res.status != LpStatus::Optimal) {
    return std::nullopt;
  }
  return std::move(res.x);
}

bool point_in_conv(const RatVector& x, const PointSet& set) {
  if (x.size() != set.dim()) {
    throw DimensionMismatch("point of dimension " + std::to_string(x.size()) +
                            " tested against a set of dimension " + std::to_string(set.dim()));
  }
  // Outside the bounding box means outside the hull; saves an LP.
  const auto [lo, hi] = set.bounding_box();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < Rational(lo[i]) || x[i] > Rational(hi[i])) {
      return false;
    }
  }
  return convex_combination(x, set).has_value();
}

bool point_in_conv(const IntPoint& x, const PointSet& set) {
  if (x.dim() != set.dim()) {
    throw DimensionMismatch("point of dimension " + std::to_string(x.dim()) +
                            " tested against a set of dimension " + std::to_string(set.dim()));
  }
  if (set.contains(x)) {
    return true;
  }
  return point_in_conv(to_rat_vector(x), set);
}

namespace {

// Integer normal of the hyperplane (within the direction space `basis`)
// through points q_0..q_{j-1}, where j = basis.size().
IntPoint facet_normal(const std::vector<IntPoint>& basis, std::span<const IntPoint> pts) {
  const std::size_t j = basis.size();
  const std::size_t d = basis.empty() ? pts[0].dim() : basis[0].dim();
  // Unknowns mu (j of them); equations: <sum mu_i basis_i, q_k - q_0> = 0.
  RatMatrix eqs;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const IntPoint diff = pts[k] - pts[0];
    RatVector row(j);
    for (std::size_t i = 0; i < j; ++i) {
      row[i] = Rational(dot(basis[i], diff));
    }
    eqs.push_back(std::move(row));
  }
  const RatMatrix null = nullspace(eqs, j);
  if (null.size() != 1) {
    return IntPoint(d);
  }
  RatVector n(d, Rational(0));
  for (std::size_t i = 0; i < j; ++i) {
    if (null[0][i].is_zero()) {
      continue;
    }
    for (std::size_t c = 0; c < d; ++c) {
      n[c] += null[0][i] * Rational(basis[i][c]);
    }
  }
  return to_primitive_integer(n);
}

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) {
    return;
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) {
      --i;
    }
    if (i == 0) {
      return;
    }
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) {
      idx[t] = idx[t - 1] + 1;
    }
  }
}

}  // namespace

std::vector<AffineFunctional> hull_facets(const PointSet& set) {
  if (set.empty()) {
    throw InvalidArgument("facets of an empty set");
  }
  const std::size_t d = set.dim();
  if (d > 3) {
    throw UnsupportedDimension("facet enumeration supports dimension <= 3, got " +
                               std::to_string(d));
  }
  const AffineHull hull = affine_hull_basis(set);
  const std::size_t j = hull.dimension();

  struct Key {
    IntPoint normal;
    Coord offset;
    auto operator<=>(const Key&) const = default;
  };
  std::vector<Key> keys;

  // Equalities of the affine hull, as opposite pairs.
  RatMatrix basis_rows;
  for (const auto& b : hull.basis) {
    basis_rows.push_back(to_rat_vector(b));
  }
  for (const auto& n : nullspace(basis_rows, d)) {
    const IntPoint normal = to_primitive_integer(n);
    const Coord off = dot(normal, hull.anchor);
    keys.push_back({normal, off});
    keys.push_back({-normal, -off});
  }

  if (j > 0) {
    // Facets inside the affine hull: through j affinely independent points.
    std::vector<IntPoint> chosen(j);
    for_each_combination(set.size(), j, [&](std::span<const std::size_t> idx) {
      for (std::size_t i = 0; i < j; ++i) {
        chosen[i] = set[idx[i]];
      }
      const IntPoint normal = facet_normal(hull.basis, chosen);
      if (normal.is_zero()) {
        return;
      }
      const Coord off = dot(normal, chosen[0]);
      bool has_pos = false;
      bool has_neg = false;
      for (const auto& p : set) {
        const Coord v = dot(normal, p) - off;
        has_pos |= v > 0;
        has_neg |= v < 0;
        if (has_pos && has_neg) {
          return;
        }
      }
      if (has_neg) {
        keys.push_back({-normal, -off});
      } else {
        keys.push_back({normal, off});
      }
    });
  }

  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<AffineFunctional> out;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    out.push_back(AffineFunctional::from_integers(k.normal, k.offset));
  }
  return out;
}

PointSet lattice_points_in_conv(const PointSet& set) {
  if (set.empty()) {
    throw InvalidArgument("lattice points of an empty hull");
  }
  if (set.dim() > 3) {
    return lattice_points_in_conv_by_lp(set);
  }
  const auto facets = hull_facets(set);
  std::vector<std::pair<IntPoint, Coord>> ints;
  for (const auto& f : facets) {
    ints.emplace_back(to_primitive_integer(f.normal), f.offset.floor());
  }
  const auto [lo, hi] = set.bounding_box();
  std::vector<IntPoint> out;
  for (const auto& p : box_points(lo, hi)) {
    const bool inside = std::all_of(ints.begin(), ints.end(), [&](const auto& f) {
      return dot(f.first, p) >= f.second;
    });
    if (inside) {
      out.push_back(p);
    }
  }
  return PointSet(set.dim(), std::move(out));
}

PointSet lattice_points_in_conv_by_lp(const PointSet& set) {
  if (set.empty()) {
    throw InvalidArgument("lattice points of an empty hull");
  }
  const auto [lo, hi] = set.bounding_box();
  std::vector<IntPoint> out;
  for (const auto& p : box_points(lo, hi)) {
    if (point_in_conv(p, set)) {
      out.push_back(p);
    }
  }
  return PointSet(set.dim(), std::move(out));
}

std::vector<IntPoint> lattice_points_in_simplex(std::span<const IntPoint> vertices) {
  if (vertices.empty()) {
    return {};
  }
  const std::size_t d = vertices[0].dim();
  const std::size_t j = vertices.size() - 1;
  const IntPoint& v0 = vertices[0];
  if (j == 0) {
    return {v0};
  }
  std::vector<IntPoint> edges;
  for (std::size_t i = 1; i <= j; ++i) {
    edges.push_back(vertices[i] - v0);
  }
  std::vector<IntPoint> out;
  if (j == 1) {
    const Coord g = gcd_of(edges[0]);
    if (g == 0) {
      throw InvalidArgument("simplex vertices are not affinely independent");
    }
    IntPoint step(d);
    for (std::size_t c = 0; c < d; ++c) {
      step[c] = edges[0][c] / g;
    }
    IntPoint cur = v0;
    for (Coord t = 0; t <= g; ++t) {
      out.push_back(cur);
      cur += step;
    }
    return out;
  }

  // Pick j coordinates on which the edge vectors stay independent.
  RatMatrix rows;
  for (const auto& e : edges) {
    rows.push_back(to_rat_vector(e));
  }
  const RowEchelon ech = row_reduce(rows, d);
  if (ech.rank() != j) {
    throw InvalidArgument("simplex vertices are not affinely independent");
  }
  const std::vector<std::size_t>& coords = ech.pivot_columns;

  // Projected square system M (j x j): column i is edge i restricted to coords.
  RatMatrix m(j, RatVector(j));
  for (std::size_t r = 0; r < j; ++r) {
    for (std::size_t i = 0; i < j; ++i) {
      m[r][i] = Rational(edges[i][coords[r]]);
    }
  }
  // Inverse via elimination on [M | I].
  RatMatrix aug = m;
  for (std::size_t r = 0; r < j; ++r) {
    aug[r].resize(2 * j, Rational(0));
    aug[r][j + r] = 1;
  }
  const RowEchelon inv_ech = row_reduce(aug, 2 * j);
  // Common denominator so barycentric numerators are integers.
  RatVector flat;
  for (const auto& row : inv_ech.rows) {
    flat.insert(flat.end(), row.begin() + static_cast<std::ptrdiff_t>(j), row.end());
  }
  mpz_class lcm = 1;
  for (const auto& x : flat) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
  }
  if (!mpz_fits_slong_p(lcm.get_mpz_t())) {
    throw ArithmeticOverflow("simplex determinant outside 64-bit range");
  }
  const __int128 den = mpz_get_si(lcm.get_mpz_t());
  std::vector<std::vector<__int128>> adj(j, std::vector<__int128>(j));
  for (std::size_t r = 0; r < j; ++r) {
    for (std::size_t c = 0; c < j; ++c) {
      const Rational scaled = inv_ech.rows[r][j + c] * Rational(static_cast<std::int64_t>(den));
      adj[r][c] = scaled.floor();
    }
  }

  IntPoint lo(j);
  IntPoint hi(j);
  for (std::size_t r = 0; r < j; ++r) {
    lo[r] = hi[r] = v0[coords[r]];
    for (const auto& v : vertices) {
      lo[r] = std::min(lo[r], v[coords[r]]);
      hi[r] = std::max(hi[r], v[coords[r]]);
    }
  }
  std::vector<__int128> w(j);
  std::vector<__int128> shifted(j);
  for (const auto& y : box_points(lo, hi)) {
    for (std::size_t r = 0; r < j; ++r) {
      shifted[r] = static_cast<__int128>(y[r]) - v0[coords[r]];
    }
    __int128 total = 0;
    bool ok = true;
    for (std::size_t i = 0; i < j && ok; ++i) {
      __int128 acc = 0;
      for (std::size_t r = 0; r < j; ++r) {
        acc += adj[i][r] * shifted[r];
      }
      w[i] = acc;
      ok = acc >= 0;
      total += acc;
    }
    if (!ok || total > den) {
      continue;
    }
    IntPoint x(d);
    for (std::size_t c = 0; c < d; ++c) {
      __int128 num = 0;
      for (std::size_t i = 0; i < j; ++i) {
        num += w[i] * edges[i][c];
      }
      if (num % den != 0) {
        ok = false;
        break;
      }
      x[c] = checked_add(v0[c], static_cast<Coord>(num / den));
    }
    if (ok) {
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<LatticeLine> lines_through(const PointSet& set) {
  // A line is identified by its canonical direction and the unique lattice
  // point r on it with 0 <= r_k < v_k, k the first nonzero index of v.
  std::map<std::pair<IntPoint, IntPoint>, std::vector<IntPoint>> lines;
  const auto& pts = set.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const IntPoint v = primitive_direction(pts[j] - pts[i]);
      std::size_t k = 0;
      while (v[k] == 0) {
        ++k;
      }
      Coord t = pts[i][k] / v[k];
      if (pts[i][k] % v[k] != 0 && pts[i][k] < 0) {
        --t;
      }
      IntPoint residue = pts[i];
      for (std::size_t c = 0; c < residue.dim(); ++c) {
        residue[c] -= t * v[c];
      }
      auto& trace = lines[{v, residue}];
      trace.push_back(pts[i]);
      trace.push_back(pts[j]);
    }
  }
  std::vector<LatticeLine> out;
  out.reserve(lines.size());
  for (auto& [key, trace] : lines) {
    std::sort(trace.begin(), trace.end());
    trace.erase(std::unique(trace.begin(), trace.end()), trace.end());
    out.push_back({trace.front(), key.first, std::move(trace)});
  }
  std::sort(out.begin(), out.end(), [](const LatticeLine& a, const LatticeLine& b) {
    return std::tie(a.direction, a.base) < std::tie(b.direction, b.base);
  });
  return out;
}

}  // namespace latsep
