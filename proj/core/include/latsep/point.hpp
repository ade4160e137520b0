#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "latsep/rational.hpp"

namespace latsep {

using Coord = std::int64_t;

/// A point of Z^d. Arithmetic is overflow-checked and throws ArithmeticOverflow.
class IntPoint {
 public:
  using Storage = boost::container::small_vector<Coord, 4>;

  IntPoint() = default;
  explicit IntPoint(std::size_t dim) : coords_(dim, 0) {}
  IntPoint(std::initializer_list<Coord> coords) : coords_(coords) {}
  explicit IntPoint(std::span<const Coord> coords) : coords_(coords.begin(), coords.end()) {}

  [[nodiscard]] std::size_t dim() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  Coord& operator[](std::size_t i) { return coords_[i]; }

  [[nodiscard]] auto begin() const { return coords_.begin(); }
  [[nodiscard]] auto end() const { return coords_.end(); }
  [[nodiscard]] std::span<const Coord> coords() const { return {coords_.data(), coords_.size()}; }

  [[nodiscard]] bool is_zero() const;

  IntPoint& operator+=(const IntPoint& rhs);
  IntPoint& operator-=(const IntPoint& rhs);
  IntPoint& operator*=(Coord factor);
  IntPoint operator-() const;

  friend IntPoint operator+(IntPoint lhs, const IntPoint& rhs) { return lhs += rhs; }
  friend IntPoint operator-(IntPoint lhs, const IntPoint& rhs) { return lhs -= rhs; }
  friend IntPoint operator*(Coord factor, IntPoint rhs) { return rhs *= factor; }

  friend bool operator==(const IntPoint& lhs, const IntPoint& rhs) {
    return lhs.coords_ == rhs.coords_;
  }
  /// Lexicographic order; shorter points sort first when dimensions differ.
  friend std::strong_ordering operator<=>(const IntPoint& lhs, const IntPoint& rhs);

  /// "(x1,x2,...)"
  [[nodiscard]] std::string to_string() const;

 private:
  Storage coords_;
};

std::ostream& operator<<(std::ostream& out, const IntPoint& point);

/// A point with exact rational coordinates (vertices of cut polytopes, anchors of flats).
using RatPoint = std::vector<Rational>;

RatPoint to_rational(const IntPoint& point);
std::string to_string(const RatPoint& point);

Coord checked_add(Coord a, Coord b);
Coord checked_mul(Coord a, Coord b);

/// Inner product with 128-bit accumulation; throws when the result leaves int64.
Coord dot(const IntPoint& a, const IntPoint& b);

Coord gcd_of(const IntPoint& v);

/// Divides by the gcd of the entries and makes the first nonzero entry positive.
IntPoint primitive_direction(const IntPoint& v);

/// Finite set of lattice points of one dimension, stored sorted and deduplicated.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  /// Throws DimensionMismatch when a point has a length other than `dim`.
  PointSet(std::size_t dim, std::vector<IntPoint> points);
  PointSet(std::size_t dim, std::initializer_list<IntPoint> points)
      : PointSet(dim, std::vector<IntPoint>(points)) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] bool empty() const { return points_.empty(); }
  [[nodiscard]] const std::vector<IntPoint>& points() const { return points_; }
  const IntPoint& operator[](std::size_t i) const { return points_[i]; }
  [[nodiscard]] auto begin() const { return points_.begin(); }
  [[nodiscard]] auto end() const { return points_.end(); }

  [[nodiscard]] bool contains(const IntPoint& p) const;
  /// Returns true if the point was not already present.
  bool insert(const IntPoint& p);

  [[nodiscard]] PointSet set_union(const PointSet& other) const;
  [[nodiscard]] PointSet set_difference(const PointSet& other) const;
  [[nodiscard]] PointSet set_intersection(const PointSet& other) const;
  [[nodiscard]] bool is_subset_of(const PointSet& other) const;

  /// Componentwise min and max; requires a nonempty set.
  [[nodiscard]] std::pair<IntPoint, IntPoint> bounding_box() const;

  friend bool operator==(const PointSet& lhs, const PointSet& rhs) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<IntPoint> points_;
};

std::ostream& operator<<(std::ostream& out, const PointSet& set);

/// All lattice points of the box [lo, hi] in lexicographic order.
PointSet box_points(const IntPoint& lo, const IntPoint& hi);

}  // namespace latsep

template <>
struct std::hash<latsep::IntPoint> {
  std::size_t operator()(const latsep::IntPoint& p) const noexcept {
    std::size_t h = p.dim();
    for (auto c : p) {
      h ^= std::hash<latsep::Coord>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
