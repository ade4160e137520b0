#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latsep/geometry.hpp"
#include "latsep/point.hpp"
#include "latsep/verdict.hpp"

namespace latsep {

enum class Side { A, B, Empty };

std::string to_string(Side side);

/// Two nonempty disjoint point sets of the same dimension; S = A ∪ B.
class Partition {
 public:
  /// Throws DimensionMismatch or InvalidArgument when the invariants fail.
  Partition(PointSet a, PointSet b);

  [[nodiscard]] const PointSet& a() const { return a_; }
  [[nodiscard]] const PointSet& b() const { return b_; }
  [[nodiscard]] const PointSet& all() const { return s_; }
  [[nodiscard]] std::size_t dim() const { return s_.dim(); }

  /// Side::Empty when the point is not in S.
  [[nodiscard]] Side side_of(const IntPoint& p) const;

  /// The partition with A and B exchanged.
  [[nodiscard]] Partition swapped() const { return Partition(b_, a_); }

 private:
  PointSet a_;
  PointSet b_;
  PointSet s_;
};

// ---------------------------------------------------------------- Condition P

/// Equal sums of `order` points of A and of B (with repetition).
struct ParallelogramWitness {
  int order = 0;
  std::vector<IntPoint> a_points;
  std::vector<IntPoint> b_points;
  IntPoint sum;
};

/// k-parallelogram condition: for every k' <= k, no multiset of k' points of
/// A has the same coordinate sum as a multiset of k' points of B. The witness
/// uses the least violating k' and the lexicographically smallest common sum.
Verdict<ParallelogramWitness> check_parallelogram(const Partition& partition, int k);

// ---------------------------------------------------------------- Condition R

struct RayWitness {
  LatticeLine line;
  std::vector<Side> colors;  // side of each trace point
};

/// On every line through S meeting both A and B, the A-points form a prefix
/// or a suffix of the ordered trace.
Verdict<RayWitness> check_ray(const Partition& partition);

/// The two evaluation routes behind check_ray: pairwise line enumeration, and
/// a walk along every short primitive direction over a dense occupancy grid.
Verdict<RayWitness> check_ray_by_lines(const Partition& partition);
Verdict<RayWitness> check_ray_by_directions(const Partition& partition);

// ---------------------------------------------------------------- Condition H

/// Lexicographic encoding of a nested chain of separating flats: a point
/// belongs to the side given by the sign of the first functional that does not
/// vanish on it (positive = A, negative = B); points where all vanish are
/// owned by `residual_owner`.
struct SeparatingFlag {
  std::size_t dim = 0;
  std::vector<AffineFunctional> functionals;
  Side residual_owner = Side::Empty;

  enum class Class { A, B, Residual };
  [[nodiscard]] Class classify(const IntPoint& x) const;
};

/// Throws InvalidFlag unless there are at most `dim` functionals of the right
/// length with linearly independent normals (so each cuts the previous flat
/// by exactly one dimension).
void validate_flag(const SeparatingFlag& flag);

bool verify_flag(const Partition& partition, const SeparatingFlag& flag);

/// Why no flag exists: after the listed levels the live points span `flat`,
/// every weak separator vanishes on them, and `common_point` lies in both
/// conv(live A) and conv(live B) with the given convex weights.
struct BlockingFlat {
  std::vector<AffineFunctional> levels;
  AffineHull flat;
  PointSet live_a;
  PointSet live_b;
  RatVector common_point;
  RatVector weights_a;
  RatVector weights_b;
};

using FlagCertificate = std::variant<SeparatingFlag, BlockingFlat>;

/// Decides Condition H. Each level sums, over the live points, weak separators
/// that are strict wherever possible; the zero set of the sum becomes the next
/// live set. Succeeds with a flag or fails with a blocking flat.
Verdict<FlagCertificate> search_flag(const Partition& partition);

/// True iff the certificate of a failed search re-falsifies Condition H.
bool verify_blocking(const Partition& partition, const BlockingFlat& block);

/// An affine subspace given both by equations and by anchor + basis.
struct AffineSubspace {
  std::vector<AffineFunctional> equations;  // all vanish on the subspace
  RatVector anchor;
  std::vector<IntPoint> basis;

  [[nodiscard]] std::size_t dimension() const { return basis.size(); }
  [[nodiscard]] bool contains(const IntPoint& x) const;
};

/// The nested chain H_k ⊂ ... ⊂ H_d, smallest flat first.
std::vector<AffineSubspace> lex_flag_to_subspace_chain(const SeparatingFlag& flag);

namespace detail {
/// A weak separator (>= 0 on A, <= 0 on B) strict at every point where some
/// weak separator is strict, normalized to primitive integers; nullopt when
/// every weak separator vanishes on A ∪ B. One LP with a margin per point.
std::optional<AffineFunctional> relative_interior_separator(const PointSet& a, const PointSet& b);
/// Same zero set, built by summing one LP solution per uncovered point.
std::optional<AffineFunctional> relative_interior_separator_per_point(const PointSet& a,
                                                                      const PointSet& b);
}  // namespace detail

}  // namespace latsep
