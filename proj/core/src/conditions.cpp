#include "latsep/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "latsep/error.hpp"
#include "latsep/lp.hpp"

namespace latsep {

std::string to_string(Side side) {
  switch (side) {
    case Side::A:
      return "A";
    case Side::B:
      return "B";
    case Side::Empty:
      return "empty";
  }
  return "empty";
}

Partition::Partition(PointSet a, PointSet b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.dim() != b_.dim()) {
    throw DimensionMismatch("A has dimension " + std::to_string(a_.dim()) + " but B has " +
                            std::to_string(b_.dim()));
  }
  if (a_.empty() || b_.empty()) {
    throw InvalidArgument("both sides of a partition must be nonempty");
  }
  const PointSet common = a_.set_intersection(b_);
  if (!common.empty()) {
    throw InvalidArgument("A and B share the point " + common[0].to_string());
  }
  s_ = a_.set_union(b_);
}

Side Partition::side_of(const IntPoint& p) const {
  if (a_.contains(p)) {
    return Side::A;
  }
  if (b_.contains(p)) {
    return Side::B;
  }
  return Side::Empty;
}

// ---------------------------------------------------------------- Condition P

namespace {

// Sums of j points are shifted by j*lo and packed as mixed-radix integers, so
// packing is additive and key order equals lexicographic order of the sums.
struct SumPacking {
  bool ok = false;
  std::uint64_t range = 0;  // every packed sum of at most k points is below this
  IntPoint lo;
  std::vector<std::uint64_t> stride;

  SumPacking(const PointSet& s, int k) {
    const auto [low, high] = s.bounding_box();
    lo = low;
    const std::size_t d = s.dim();
    stride.assign(d, 0);
    unsigned __int128 total = 1;
    for (std::size_t i = d; i-- > 0;) {
      stride[i] = static_cast<std::uint64_t>(total);
      const unsigned __int128 radix =
          static_cast<unsigned __int128>(static_cast<__int128>(high[i]) - low[i]) * k + 1;
      total *= radix;
      if (total > (static_cast<unsigned __int128>(1) << 62)) {
        return;
      }
    }
    ok = true;
    range = static_cast<std::uint64_t>(total);
  }

  [[nodiscard]] std::uint64_t key(const IntPoint& p) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
      out += static_cast<std::uint64_t>(p[i] - lo[i]) * stride[i];
    }
    return out;
  }

  [[nodiscard]] IntPoint unpack(std::uint64_t key, int count) const {
    IntPoint out(lo.dim());
    for (std::size_t i = 0; i < lo.dim(); ++i) {
      out[i] = static_cast<Coord>(key / stride[i]) + checked_mul(lo[i], count);
      key %= stride[i];
    }
    return out;
  }
};

template <class Key>
std::vector<Key> next_level(const std::vector<Key>& prev, const std::vector<Key>& step,
                            std::uint64_t range) {
  std::vector<Key> out;
  if constexpr (std::is_integral_v<Key>) {
    // Dense sums: mark a bitmap and read it back in order.
    if (range > 0 && range <= (std::uint64_t{1} << 28) && prev.size() * step.size() > range / 16) {
      std::vector<bool> seen(range, false);
      for (const auto& s : prev) {
        for (const auto& a : step) {
          seen[s + a] = true;
        }
      }
      for (std::uint64_t key = 0; key < range; ++key) {
        if (seen[key]) {
          out.push_back(key);
        }
      }
      return out;
    }
  }
  out.reserve(prev.size() * step.size());
  for (const auto& s : prev) {
    for (const auto& a : step) {
      out.push_back(s + a);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Greedy decomposition of `sum` into `count` steps: the smallest step whose
// remainder is still reachable, which yields a nondecreasing list.
template <class Key>
std::vector<std::size_t> decompose(Key sum, int count, const std::vector<Key>& step,
                                   const std::vector<std::vector<Key>>& levels) {
  std::vector<std::size_t> picks;
  for (int j = count; j > 0; --j) {
    bool found = false;
    for (std::size_t i = 0; i < step.size(); ++i) {
      if constexpr (std::is_integral_v<Key>) {
        if (step[i] > sum) {
          continue;
        }
      }
      const Key rest = sum - step[i];
      if (std::binary_search(levels[j - 1].begin(), levels[j - 1].end(), rest)) {
        picks.push_back(i);
        sum = rest;
        found = true;
        break;
      }
    }
    if (!found) {
      throw InternalError("sum decomposition failed");
    }
  }
  return picks;
}

// Minimal wrapper giving IntPoint the arithmetic the templates use.
struct PointKey {
  IntPoint p;
  friend PointKey operator+(const PointKey& a, const PointKey& b) { return {a.p + b.p}; }
  friend PointKey operator-(const PointKey& a, const PointKey& b) { return {a.p - b.p}; }
  friend bool operator==(const PointKey&, const PointKey&) = default;
  friend auto operator<=>(const PointKey& a, const PointKey& b) { return a.p <=> b.p; }
};

template <class Key>
std::optional<ParallelogramWitness> parallelogram_search(const std::vector<Key>& a_keys,
                                                         const std::vector<Key>& b_keys, Key zero,
                                                         int k, std::uint64_t range,
                                                         auto&& to_point) {
  std::vector<std::vector<Key>> la{{zero}};
  std::vector<std::vector<Key>> lb{{zero}};
  for (int j = 1; j <= k; ++j) {
    la.push_back(next_level(la.back(), a_keys, range));
    lb.push_back(next_level(lb.back(), b_keys, range));
    const auto& x = la.back();
    const auto& y = lb.back();
    auto ix = x.begin();
    auto iy = y.begin();
    while (ix != x.end() && iy != y.end()) {
      if (*ix < *iy) {
        ++ix;
      } else if (*iy < *ix) {
        ++iy;
      } else {
        ParallelogramWitness w;
        w.order = j;
        w.sum = to_point(*ix, j);
        for (auto i : decompose(*ix, j, a_keys, la)) {
          w.a_points.push_back(to_point(a_keys[i], 1));
        }
        for (auto i : decompose(*ix, j, b_keys, lb)) {
          w.b_points.push_back(to_point(b_keys[i], 1));
        }
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict<ParallelogramWitness> check_parallelogram(const Partition& partition, int k) {
  if (k < 1) {
    throw InvalidArgument("parallelogram order must be at least 1");
  }
  std::optional<ParallelogramWitness> found;
  const SumPacking packing(partition.all(), k);
  if (packing.ok) {
    std::vector<std::uint64_t> a_keys;
    std::vector<std::uint64_t> b_keys;
    for (const auto& p : partition.a()) {
      a_keys.push_back(packing.key(p));
    }
    for (const auto& p : partition.b()) {
      b_keys.push_back(packing.key(p));
    }
    found = parallelogram_search<std::uint64_t>(
        a_keys, b_keys, 0, k, packing.range,
        [&](std::uint64_t key, int count) { return packing.unpack(key, count); });
  } else {
    std::vector<PointKey> a_keys;
    std::vector<PointKey> b_keys;
    for (const auto& p : partition.a()) {
      a_keys.push_back({p});
    }
    for (const auto& p : partition.b()) {
      b_keys.push_back({p});
    }
    found = parallelogram_search<PointKey>(a_keys, b_keys, PointKey{IntPoint(partition.dim())}, k, 0,
                                           [](const PointKey& key, int) { return key.p; });
  }
  if (found) {
    return Verdict<ParallelogramWitness>::fail(std::move(*found));
  }
  return Verdict<ParallelogramWitness>::pass();
}

// ---------------------------------------------------------------- Condition R

namespace {

bool interleaved(const std::vector<Side>& colors) {
  int changes = 0;
  for (std::size_t i = 1; i < colors.size(); ++i) {
    if (colors[i] != colors[i - 1]) {
      ++changes;
    }
  }
  return changes >= 2;
}

}  // namespace

Verdict<RayWitness> check_ray_by_lines(const Partition& partition) {
  if (partition.all().size() < 3) {
    return Verdict<RayWitness>::pass();
  }
  for (auto& line : lines_through(partition.all())) {
    std::vector<Side> colors;
    colors.reserve(line.trace.size());
    for (const auto& p : line.trace) {
      colors.push_back(partition.side_of(p));
    }
    if (interleaved(colors)) {
      return Verdict<RayWitness>::fail({std::move(line), std::move(colors)});
    }
  }
  return Verdict<RayWitness>::pass();
}

namespace {

// Dense occupancy grid over the bounding box of S.
struct ColorGrid {
  IntPoint lo;
  IntPoint extent;  // hi - lo
  std::vector<std::int64_t> stride;
  std::vector<std::uint8_t> cells;  // 0 empty, 1 A, 2 B

  explicit ColorGrid(const Partition& partition) {
    const auto [low, high] = partition.all().bounding_box();
    lo = low;
    extent = high - low;
    const std::size_t d = lo.dim();
    stride.assign(d, 0);
    std::int64_t total = 1;
    for (std::size_t i = d; i-- > 0;) {
      stride[i] = total;
      total *= extent[i] + 1;
    }
    cells.assign(static_cast<std::size_t>(total), 0);
    for (const auto& p : partition.a()) {
      cells[index(p)] = 1;
    }
    for (const auto& p : partition.b()) {
      cells[index(p)] = 2;
    }
  }

  [[nodiscard]] std::size_t index(const IntPoint& p) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
      out += (p[i] - lo[i]) * stride[i];
    }
    return static_cast<std::size_t>(out);
  }

  [[nodiscard]] bool inside(const IntPoint& p) const {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (p[i] < lo[i] || p[i] > lo[i] + extent[i]) {
        return false;
      }
    }
    return true;
  }
};

// Grid cells times candidate directions, or nullopt when not worth a grid.
std::optional<double> direction_walk_cost(const Partition& partition) {
  const auto [lo, hi] = partition.all().bounding_box();
  double cells = 1;
  double dirs = 1;
  for (std::size_t i = 0; i < lo.dim(); ++i) {
    const double e = static_cast<double>(hi[i]) - static_cast<double>(lo[i]);
    cells *= e + 1;
    dirs *= 2 * std::floor(e / 2) + 1;
  }
  if (cells > 1e8) {
    return std::nullopt;
  }
  return cells * dirs / 2;
}

}  // namespace

Verdict<RayWitness> check_ray_by_directions(const Partition& partition) {
  if (partition.all().size() < 3) {
    return Verdict<RayWitness>::pass();
  }
  const ColorGrid grid(partition);
  const std::size_t d = partition.dim();

  // A line with three points of S has a direction v with 2|v_i| <= extent_i.
  IntPoint half(d);
  for (std::size_t i = 0; i < d; ++i) {
    half[i] = grid.extent[i] / 2;
  }
  std::vector<IntPoint> directions;
  for (const auto& v : box_points(-half, half)) {
    if (!v.is_zero() && primitive_direction(v) == v) {
      directions.push_back(v);
    }
  }
  std::sort(directions.begin(), directions.end());

  // Walk every maximal line of the box from its first cell, on flat indices.
  const std::int64_t total = static_cast<std::int64_t>(grid.cells.size());
  std::vector<std::int64_t> x(d);
  for (const auto& v : directions) {
    std::int64_t offset = 0;
    for (std::size_t i = 0; i < d; ++i) {
      offset += v[i] * grid.stride[i];
    }
    std::optional<std::int64_t> best_base;
    std::fill(x.begin(), x.end(), 0);
    for (std::int64_t idx = 0; idx < total; ++idx) {
      // x holds the coordinates of idx relative to lo.
      bool first = false;
      std::int64_t steps = std::numeric_limits<std::int64_t>::max();
      for (std::size_t i = 0; i < d; ++i) {
        if (v[i] == 0) {
          continue;
        }
        const std::int64_t back = x[i] - v[i];
        if (back < 0 || back > grid.extent[i]) {
          first = true;
        }
        steps = std::min(steps, v[i] > 0 ? (grid.extent[i] - x[i]) / v[i] : x[i] / -v[i]);
      }
      if (first) {
        std::uint8_t last = 0;
        int changes = 0;
        std::int64_t base = -1;
        for (std::int64_t k = 0, at = idx; k <= steps; ++k, at += offset) {
          const std::uint8_t c = grid.cells[static_cast<std::size_t>(at)];
          if (c == 0) {
            continue;
          }
          if (base < 0) {
            base = at;
          }
          if (last != 0 && c != last) {
            ++changes;
          }
          last = c;
        }
        // Flat index order is lexicographic order of the cells.
        if (changes >= 2 && (!best_base || base < *best_base)) {
          best_base = base;
        }
      }
      for (std::size_t i = d; i-- > 0;) {
        if (++x[i] <= grid.extent[i]) {
          break;
        }
        x[i] = 0;
      }
    }
    if (best_base) {
      IntPoint p = grid.lo;
      std::int64_t rest = *best_base;
      for (std::size_t i = 0; i < d; ++i) {
        p[i] += rest / grid.stride[i];
        rest %= grid.stride[i];
      }
      RayWitness w;
      w.line.base = p;
      w.line.direction = v;
      for (; grid.inside(p); p += v) {
        const std::uint8_t c = grid.cells[grid.index(p)];
        if (c != 0) {
          w.line.trace.push_back(p);
          w.colors.push_back(c == 1 ? Side::A : Side::B);
        }
      }
      return Verdict<RayWitness>::fail(std::move(w));
    }
  }
  return Verdict<RayWitness>::pass();
}

Verdict<RayWitness> check_ray(const Partition& partition) {
  const double n = static_cast<double>(partition.all().size());
  const auto walk = direction_walk_cost(partition);
  if (walk && *walk < 4 * n * n) {
    return check_ray_by_directions(partition);
  }
  return check_ray_by_lines(partition);
}

// ---------------------------------------------------------------- Condition H

SeparatingFlag::Class SeparatingFlag::classify(const IntPoint& x) const {
  for (const auto& g : functionals) {
    const int s = g.sign_at(x);
    if (s > 0) {
      return Class::A;
    }
    if (s < 0) {
      return Class::B;
    }
  }
  return Class::Residual;
}

void validate_flag(const SeparatingFlag& flag) {
  if (flag.dim == 0) {
    throw InvalidFlag("flag dimension must be positive");
  }
  if (flag.functionals.size() > flag.dim) {
    throw InvalidFlag("flag has " + std::to_string(flag.functionals.size()) +
                      " levels in dimension " + std::to_string(flag.dim));
  }
  RatMatrix normals;
  for (std::size_t i = 0; i < flag.functionals.size(); ++i) {
    const auto& g = flag.functionals[i];
    if (g.dim() != flag.dim) {
      throw InvalidFlag("level " + std::to_string(i + 1) + " has " + std::to_string(g.dim()) +
                        " coefficients, expected " + std::to_string(flag.dim));
    }
    normals.push_back(g.normal);
    if (rank(normals, flag.dim) != normals.size()) {
      throw InvalidFlag("level " + std::to_string(i + 1) +
                        " is constant on the flat cut out by the previous levels");
    }
  }
}

bool verify_flag(const Partition& partition, const SeparatingFlag& flag) {
  validate_flag(flag);
  if (flag.dim != partition.dim()) {
    throw DimensionMismatch("flag of dimension " + std::to_string(flag.dim) +
                            " applied to points of dimension " +
                            std::to_string(partition.dim()));
  }
  using C = SeparatingFlag::Class;
  for (const auto& a : partition.a()) {
    const C c = flag.classify(a);
    if (c == C::B || (c == C::Residual && flag.residual_owner != Side::A)) {
      return false;
    }
  }
  for (const auto& b : partition.b()) {
    const C c = flag.classify(b);
    if (c == C::A || (c == C::Residual && flag.residual_owner != Side::B)) {
      return false;
    }
  }
  return true;
}

namespace {

// A functional g >= 0 on A', g <= 0 on B' maximizing sign(x)*g(x), with
// coefficients bounded in [-1,1]. Variables: p, q in [0,1]^d (w = p - q), t.
// g(y) = <w, y - x> + sigma*t, so t > 0 means strict at x.
std::optional<AffineFunctional> weak_separator_strict_at(const IntPoint& x, int sigma,
                                                         const PointSet& a, const PointSet& b) {
  const std::size_t d = x.dim();
  const std::size_t n = 2 * d + 1;
  LinearProgram lp;
  lp.num_vars = n;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector row(n);
    row[i] = 1;
    lp.add(std::move(row), Relation::LessEqual, Rational(1));
  }
  lp.objective.assign(n, Rational(0));
  lp.objective[2 * d] = 1;

  std::vector<LinearConstraint> rows;
  auto add_row = [&](const IntPoint& y, int side) {
    // side = +1: g(y) >= 0, written as -<w,y-x> - sigma*t <= 0;
    // side = -1: g(y) <= 0, written as  <w,y-x> + sigma*t <= 0.
    if (y == x) {
      return;
    }
    RatVector row(n);
    for (std::size_t i = 0; i < d; ++i) {
      const Coord diff = checked_add(y[i], -x[i]);
      row[i] = Rational(-side * diff);
      row[d + i] = Rational(side * diff);
    }
    row[2 * d] = Rational(-side * sigma);
    rows.push_back({std::move(row), Relation::LessEqual, Rational(0)});
  };
  for (const auto& y : a) {
    add_row(y, +1);
  }
  for (const auto& y : b) {
    add_row(y, -1);
  }
  const LpResult res = solve_with_row_generation(lp, rows);
  if (res.status != LpStatus::Optimal || res.value.sign() <= 0) {
    return std::nullopt;
  }
  AffineFunctional g;
  g.normal.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    g.normal[i] = res.x[i] - res.x[d + i];
  }
  g.offset = dot(g.normal, x) - Rational(sigma) * res.x[2 * d];
  return g.normalized();
}

// A functional positive on all of A and negative on all of B, if one exists.
// Variables: p, q in [0,1]^d (w = p - q), free offset c, and margin t <= 1.
std::optional<AffineFunctional> strict_separator(const PointSet& a, const PointSet& b) {
  const std::size_t d = a.dim();
  const std::size_t n = 2 * d + 2;
  const std::size_t c = 2 * d;
  const std::size_t t = 2 * d + 1;
  LinearProgram lp;
  lp.num_vars = n;
  lp.free_variables = {c};
  for (std::size_t i = 0; i < n; ++i) {
    if (i == c) {
      continue;
    }
    RatVector row(n);
    row[i] = 1;
    lp.add(std::move(row), Relation::LessEqual, Rational(1));
  }
  lp.objective.assign(n, Rational(0));
  lp.objective[t] = 1;

  std::vector<LinearConstraint> rows;
  // side = +1: <w,y> - c >= t;  side = -1: <w,y> - c <= -t.
  auto add_row = [&](const IntPoint& y, int side) {
    RatVector row(n);
    for (std::size_t i = 0; i < d; ++i) {
      row[i] = Rational(-side * y[i]);
      row[d + i] = Rational(side * y[i]);
    }
    row[c] = Rational(side);
    row[t] = 1;
    rows.push_back({std::move(row), Relation::LessEqual, Rational(0)});
  };
  for (const auto& y : a) {
    add_row(y, +1);
  }
  for (const auto& y : b) {
    add_row(y, -1);
  }
  const LpResult res = solve_with_row_generation(lp, rows);
  if (res.status != LpStatus::Optimal || res.value.sign() <= 0) {
    return std::nullopt;
  }
  AffineFunctional g;
  g.normal.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    g.normal[i] = res.x[i] - res.x[d + i];
  }
  g.offset = res.x[c];
  return g.normalized();
}

struct CommonPoint {
  RatVector point;
  RatVector weights_a;
  RatVector weights_b;
};

std::optional<CommonPoint> common_hull_point(const PointSet& a, const PointSet& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t d = a.dim();
  LinearProgram lp;
  lp.num_vars = na + nb;
  RatVector sum_a(na + nb);
  RatVector sum_b(na + nb);
  for (std::size_t j = 0; j < na; ++j) {
    sum_a[j] = 1;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    sum_b[na + j] = 1;
  }
  lp.add(std::move(sum_a), Relation::Equal, Rational(1));
  lp.add(std::move(sum_b), Relation::Equal, Rational(1));
  for (std::size_t i = 0; i < d; ++i) {
    RatVector row(na + nb);
    for (std::size_t j = 0; j < na; ++j) {
      row[j] = Rational(a[j][i]);
    }
    for (std::size_t j = 0; j < nb; ++j) {
      row[na + j] = Rational(-b[j][i]);
    }
    lp.add(std::move(row), Relation::Equal, Rational(0));
  }
  LpResult res = solve(lp);
  if (res.status != LpStatus::Optimal) {
    return std::nullopt;
  }
  CommonPoint out;
  out.weights_a.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(na));
  out.weights_b.assign(res.x.begin() + static_cast<std::ptrdiff_t>(na), res.x.end());
  out.point.assign(d, Rational(0));
  for (std::size_t j = 0; j < na; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      out.point[i] += out.weights_a[j] * Rational(a[j][i]);
    }
  }
  return out;
}

}  // namespace

namespace detail {

std::optional<AffineFunctional> relative_interior_separator_per_point(const PointSet& a,
                                                                      const PointSet& b) {
  const PointSet live = a.set_union(b);
  AffineFunctional total(RatVector(live.dim(), Rational(0)), Rational(0));
  bool any = false;
  for (const auto& x : live) {
    // The running sum is strict wherever one of its terms is.
    if (any && total.sign_at(x) != 0) {
      continue;
    }
    const int sigma = a.contains(x) ? 1 : -1;
    if (auto g = weak_separator_strict_at(x, sigma, a, b)) {
      total += *g;
      any = true;
    }
  }
  if (!any) {
    return std::nullopt;
  }
  return total.normalized();
}

std::optional<AffineFunctional> relative_interior_separator(const PointSet& a, const PointSet& b) {
  // Variables: free w (d) and c, then one margin t_x in [0,1] per point, with
  // sign(x) * (<w,x> - c) >= t_x; maximize the sum of margins. Coefficients
  // are unbounded, so adding a multiple of any separator strict at x would
  // raise t_x without lowering another margin: at the optimum every point
  // that some weak separator is strict at has t_x > 0.
  const std::size_t d = a.dim();
  const std::size_t n = a.size() + b.size();
  const std::size_t vars = d + 1 + n;
  LinearProgram lp;
  lp.num_vars = vars;
  for (std::size_t i = 0; i <= d; ++i) {
    lp.free_variables.push_back(i);
  }
  lp.objective.assign(vars, Rational(0));
  std::size_t slot = d + 1;
  auto add_point = [&](const IntPoint& x, int sigma) {
    RatVector row(vars);
    for (std::size_t i = 0; i < d; ++i) {
      row[i] = Rational(-sigma * x[i]);
    }
    row[d] = Rational(sigma);
    row[slot] = 1;
    lp.add(std::move(row), Relation::LessEqual, Rational(0));
    RatVector cap(vars);
    cap[slot] = 1;
    lp.add(std::move(cap), Relation::LessEqual, Rational(1));
    lp.objective[slot] = 1;
    ++slot;
  };
  for (const auto& x : a) {
    add_point(x, 1);
  }
  for (const auto& x : b) {
    add_point(x, -1);
  }
  const LpResult res = solve(lp);
  if (res.status != LpStatus::Optimal || res.value.sign() <= 0) {
    return std::nullopt;
  }
  AffineFunctional g(RatVector(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(d)),
                     res.x[d]);
  return g.normalized();
}

}  // namespace detail

namespace {

// Above this many live points the per-point search with lazy rows beats one
// LP with a margin variable per point.
constexpr std::size_t kAggregateLimit = 48;

}  // namespace

Verdict<FlagCertificate> search_flag(const Partition& partition) {
  if (partition.all().size() > kAggregateLimit) {
    // One strict separator settles the common case with a one-level flag.
    if (auto g = strict_separator(partition.a(), partition.b())) {
      SeparatingFlag flag;
      flag.dim = partition.dim();
      flag.functionals.push_back(std::move(*g));
      flag.residual_owner = Side::Empty;
      return Verdict<FlagCertificate>::pass(std::move(flag));
    }
  }
  PointSet live_a = partition.a();
  PointSet live_b = partition.b();
  std::vector<AffineFunctional> levels;
  while (!live_a.empty() && !live_b.empty()) {
    const std::optional<AffineFunctional> separator =
        live_a.size() + live_b.size() <= kAggregateLimit
            ? detail::relative_interior_separator(live_a, live_b)
            : detail::relative_interior_separator_per_point(live_a, live_b);
    if (!separator) {
      auto common = common_hull_point(live_a, live_b);
      if (!common) {
        throw InternalError("no weak separator is strict anywhere, yet the hulls are disjoint");
      }
      BlockingFlat block{levels,
                         affine_hull_basis(live_a.set_union(live_b)),
                         live_a,
                         live_b,
                         std::move(common->point),
                         std::move(common->weights_a),
                         std::move(common->weights_b)};
      return Verdict<FlagCertificate>::fail(std::move(block));
    }
    PointSet next_a(partition.dim());
    PointSet next_b(partition.dim());
    for (const auto& p : live_a) {
      if (separator->sign_at(p) == 0) {
        next_a.insert(p);
      }
    }
    for (const auto& p : live_b) {
      if (separator->sign_at(p) == 0) {
        next_b.insert(p);
      }
    }
    levels.push_back(*separator);
    live_a = std::move(next_a);
    live_b = std::move(next_b);
  }
  SeparatingFlag flag;
  flag.dim = partition.dim();
  flag.functionals = std::move(levels);
  flag.residual_owner = !live_a.empty() ? Side::A : (!live_b.empty() ? Side::B : Side::Empty);
  return Verdict<FlagCertificate>::pass(std::move(flag));
}

bool verify_blocking(const Partition& partition, const BlockingFlat& block) {
  // Condition H forces conv(A) and conv(B) apart (the lexicographically
  // nonnegative and negative regions are disjoint convex sets), so a point of
  // conv(A') ∩ conv(B') with A' ⊆ A and B' ⊆ B refutes it.
  if (block.live_a.empty() || block.live_b.empty() || !block.live_a.is_subset_of(partition.a()) ||
      !block.live_b.is_subset_of(partition.b())) {
    return false;
  }
  const std::size_t d = partition.dim();
  auto combination = [&](const PointSet& pts, const RatVector& w) -> std::optional<RatVector> {
    if (w.size() != pts.size()) {
      return std::nullopt;
    }
    Rational total(0);
    RatVector out(d, Rational(0));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (w[j].sign() < 0) {
        return std::nullopt;
      }
      total += w[j];
      for (std::size_t i = 0; i < d; ++i) {
        out[i] += w[j] * Rational(pts[j][i]);
      }
    }
    if (total != Rational(1)) {
      return std::nullopt;
    }
    return out;
  };
  const auto pa = combination(block.live_a, block.weights_a);
  const auto pb = combination(block.live_b, block.weights_b);
  return pa && pb && *pa == block.common_point && *pb == block.common_point;
}

bool AffineSubspace::contains(const IntPoint& x) const {
  return std::all_of(equations.begin(), equations.end(),
                     [&](const AffineFunctional& g) { return g(x).is_zero(); });
}

std::vector<AffineSubspace> lex_flag_to_subspace_chain(const SeparatingFlag& flag) {
  validate_flag(flag);
  std::vector<AffineSubspace> chain;
  for (std::size_t i = flag.functionals.size() + 1; i-- > 0;) {
    AffineSubspace sub;
    RatMatrix normals;
    RatVector offsets;
    for (std::size_t j = 0; j < i; ++j) {
      sub.equations.push_back(flag.functionals[j]);
      normals.push_back(flag.functionals[j].normal);
      offsets.push_back(flag.functionals[j].offset);
    }
    auto anchor = solve_linear(normals, offsets, flag.dim);
    if (!anchor) {
      throw InternalError("independent equations without a common solution");
    }
    sub.anchor = std::move(*anchor);
    for (const auto& v : nullspace(normals, flag.dim)) {
      sub.basis.push_back(to_primitive_integer(v));
    }
    chain.push_back(std::move(sub));
  }
  return chain;
}

}  // namespace latsep
