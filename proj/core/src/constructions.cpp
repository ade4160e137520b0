#include "latsep/constructions.hpp"

#include <algorithm>

#include "latsep/error.hpp"

namespace latsep {

namespace {

__int128 cross(const IntPoint& u, const IntPoint& v) {
  return static_cast<__int128>(u[0]) * v[1] - static_cast<__int128>(u[1]) * v[0];
}

__int128 inner(const IntPoint& u, const IntPoint& v) {
  return static_cast<__int128>(u[0]) * v[0] + static_cast<__int128>(u[1]) * v[1];
}

// Orientation-free test for p in the closed triangle.
bool in_triangle(const IntPoint& p, const std::array<IntPoint, 3>& v) {
  const __int128 c0 = cross(v[1] - v[0], p - v[0]);
  const __int128 c1 = cross(v[2] - v[1], p - v[1]);
  const __int128 c2 = cross(v[0] - v[2], p - v[2]);
  const bool has_neg = c0 < 0 || c1 < 0 || c2 < 0;
  const bool has_pos = c0 > 0 || c1 > 0 || c2 > 0;
  return !(has_neg && has_pos);
}

// Perpendicular of u, oriented so that <toward, result> > 0.
IntPoint perpendicular(const IntPoint& u, const IntPoint& toward) {
  IntPoint out{-u[1], u[0]};
  if (inner(toward, out) < 0) {
    out = -out;
  }
  return out;
}

}  // namespace

MinimalTriangle::MinimalTriangle(IntPoint a1, IntPoint a2, IntPoint a3)
    : v_{std::move(a1), std::move(a2), std::move(a3)} {
  for (const auto& p : v_) {
    if (p.dim() != 2) {
      throw DimensionMismatch("triangle vertices must lie in Z^2");
    }
  }
  if (cross(v_[1] - v_[0], v_[2] - v_[0]) == 0) {
    throw InvalidArgument("triangle vertices are collinear");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const IntPoint edge = v_[(i + 1) % 3] - v_[i];
    if (gcd_of(edge) != 1) {
      throw InvalidArgument("edge " + v_[i].to_string() + "-" + v_[(i + 1) % 3].to_string() +
                            " contains another lattice point");
    }
  }
}

std::vector<IntPoint> MinimalTriangle::interior_points() const {
  IntPoint lo = v_[0];
  IntPoint hi = v_[0];
  for (const auto& p : v_) {
    for (std::size_t i = 0; i < 2; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  std::vector<IntPoint> out;
  for (const auto& p : box_points(lo, hi)) {
    if (in_triangle(p, v_) && p != v_[0] && p != v_[1] && p != v_[2]) {
      out.push_back(p);
    }
  }
  return out;
}

EqualSumTriple lemma49_triple(const MinimalTriangle& triangle) {
  const std::vector<IntPoint> interior = triangle.interior_points();
  if (interior.empty()) {
    throw NoInteriorPoints("triangle " + triangle.a1().to_string() + " " +
                           triangle.a2().to_string() + " " + triangle.a3().to_string() +
                           " has no interior lattice points");
  }
  const IntPoint& origin = triangle.a3();
  const IntPoint a1 = triangle.a1() - origin;
  const IntPoint a2 = triangle.a2() - origin;
  const IntPoint a1_perp = perpendicular(a1, a2);
  const IntPoint a2_perp = perpendicular(a2, a1);

  // interior is in lexicographic order, so strict improvement keeps the
  // smallest maximizer.
  auto argmax = [&](const IntPoint& shift, const IntPoint& normal) {
    const IntPoint* best = nullptr;
    __int128 best_value = 0;
    for (const auto& b : interior) {
      const __int128 value = inner(b - origin - shift, normal);
      if (best == nullptr || value > best_value) {
        best = &b;
        best_value = value;
      }
    }
    return *best;
  };
  EqualSumTriple out;
  out.b1 = argmax(a1, a2_perp);
  out.b2 = argmax(a2, a1_perp);
  out.b3 = triangle.a1() + triangle.a2() + triangle.a3() - out.b1 - out.b2;
  if (!std::binary_search(interior.begin(), interior.end(), out.b3)) {
    throw InternalError("constructed third point " + out.b3.to_string() +
                        " is not interior to the triangle");
  }
  return out;
}

std::vector<MinimalTriangle> find_minimal_triangles(const PointSet& set) {
  if (set.dim() != 2) {
    throw UnsupportedDimension("minimal triangles are defined in dimension 2");
  }
  const auto& pts = set.points();
  const std::size_t n = pts.size();
  std::vector<MinimalTriangle> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gcd_of(pts[j] - pts[i]) != 1) {
        continue;
      }
      for (std::size_t k = j + 1; k < n; ++k) {
        if (gcd_of(pts[k] - pts[i]) != 1 || gcd_of(pts[k] - pts[j]) != 1 ||
            cross(pts[j] - pts[i], pts[k] - pts[i]) == 0) {
          continue;
        }
        const std::array<IntPoint, 3> v{pts[i], pts[j], pts[k]};
        bool empty = true;
        for (std::size_t m = 0; m < n && empty; ++m) {
          if (m != i && m != j && m != k && in_triangle(pts[m], v)) {
            empty = false;
          }
        }
        if (empty) {
          out.emplace_back(pts[i], pts[j], pts[k]);
        }
      }
    }
  }
  return out;
}

}  // namespace latsep
