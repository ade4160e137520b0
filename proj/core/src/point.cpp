#include "latsep/point.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "latsep/error.hpp"

namespace latsep {

Coord checked_add(Coord a, Coord b) {
  Coord out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ArithmeticOverflow("integer coordinate overflow in addition");
  }
  return out;
}

Coord checked_mul(Coord a, Coord b) {
  Coord out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ArithmeticOverflow("integer coordinate overflow in multiplication");
  }
  return out;
}

bool IntPoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Coord c) { return c == 0; });
}

IntPoint& IntPoint::operator+=(const IntPoint& rhs) {
  if (rhs.dim() != dim()) {
    throw DimensionMismatch("adding points of different dimension");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    coords_[i] = checked_add(coords_[i], rhs.coords_[i]);
  }
  return *this;
}

IntPoint& IntPoint::operator-=(const IntPoint& rhs) {
  if (rhs.dim() != dim()) {
    throw DimensionMismatch("subtracting points of different dimension");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    Coord out;
    if (__builtin_sub_overflow(coords_[i], rhs.coords_[i], &out)) {
      throw ArithmeticOverflow("integer coordinate overflow in subtraction");
    }
    coords_[i] = out;
  }
  return *this;
}

IntPoint& IntPoint::operator*=(Coord factor) {
  for (auto& c : coords_) {
    c = checked_mul(c, factor);
  }
  return *this;
}

IntPoint IntPoint::operator-() const {
  IntPoint out(*this);
  out *= -1;
  return out;
}

std::strong_ordering operator<=>(const IntPoint& lhs, const IntPoint& rhs) {
  if (lhs.dim() != rhs.dim()) {
    return lhs.dim() <=> rhs.dim();
  }
  return std::lexicographical_compare_three_way(lhs.coords_.begin(), lhs.coords_.end(),
                                                rhs.coords_.begin(), rhs.coords_.end());
}

std::string IntPoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += std::to_string(coords_[i]);
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& out, const IntPoint& point) { return out << point.to_string(); }

RatPoint to_rational(const IntPoint& point) {
  RatPoint out;
  out.reserve(point.dim());
  for (auto c : point) {
    out.emplace_back(c);
  }
  return out;
}

std::string to_string(const RatPoint& point) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += point[i].to_string();
  }
  return out + ")";
}

Coord dot(const IntPoint& a, const IntPoint& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("inner product of points of different dimension");
  }
  __int128 acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    acc += static_cast<__int128>(a[i]) * b[i];
  }
  if (acc > std::numeric_limits<Coord>::max() || acc < std::numeric_limits<Coord>::min()) {
    throw ArithmeticOverflow("inner product outside 64-bit range");
  }
  return static_cast<Coord>(acc);
}

Coord gcd_of(const IntPoint& v) {
  Coord g = 0;
  for (auto c : v) {
    g = std::gcd(g, c);
  }
  return g;
}

IntPoint primitive_direction(const IntPoint& v) {
  const Coord g = gcd_of(v);
  if (g == 0) {
    throw InvalidArgument("zero vector has no direction");
  }
  IntPoint out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out[i] = v[i] / g;
  }
  for (auto c : out) {
    if (c != 0) {
      if (c < 0) {
        out *= -1;
      }
      break;
    }
  }
  return out;
}

PointSet::PointSet(std::size_t dim, std::vector<IntPoint> points) : dim_(dim), points_(std::move(points)) {
  for (const auto& p : points_) {
    if (p.dim() != dim_) {
      throw DimensionMismatch("point " + p.to_string() + " does not have dimension " +
                              std::to_string(dim_));
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool PointSet::contains(const IntPoint& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

bool PointSet::insert(const IntPoint& p) {
  if (p.dim() != dim_) {
    throw DimensionMismatch("inserting point of wrong dimension");
  }
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it != points_.end() && *it == p) {
    return false;
  }
  points_.insert(it, p);
  return true;
}

PointSet PointSet::set_union(const PointSet& other) const {
  PointSet out(dim_);
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out.points_));
  return out;
}

PointSet PointSet::set_difference(const PointSet& other) const {
  PointSet out(dim_);
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out.points_));
  return out;
}

PointSet PointSet::set_intersection(const PointSet& other) const {
  PointSet out(dim_);
  std::set_intersection(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(out.points_));
  return out;
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

std::pair<IntPoint, IntPoint> PointSet::bounding_box() const {
  if (points_.empty()) {
    throw InvalidArgument("bounding box of an empty set");
  }
  IntPoint lo = points_.front();
  IntPoint hi = points_.front();
  for (const auto& p : points_) {
    for (std::size_t i = 0; i < dim_; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  return {lo, hi};
}

std::ostream& operator<<(std::ostream& out, const PointSet& set) {
  out << '{';
  bool first = true;
  for (const auto& p : set) {
    if (!first) {
      out << ", ";
    }
    first = false;
    out << p;
  }
  return out << '}';
}

PointSet box_points(const IntPoint& lo, const IntPoint& hi) {
  if (lo.dim() != hi.dim()) {
    throw DimensionMismatch("box corners of different dimension");
  }
  const std::size_t d = lo.dim();
  std::vector<IntPoint> out;
  for (std::size_t i = 0; i < d; ++i) {
    if (lo[i] > hi[i]) {
      return PointSet(d);
    }
  }
  IntPoint cur = lo;
  while (true) {
    out.push_back(cur);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      if (i == 0) {
        return PointSet(d, std::move(out));
      }
    }
    if (d == 0) {
      break;
    }
  }
  return PointSet(d, std::move(out));
}

}  // namespace latsep
