#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latsep/conditions.hpp"
#include "latsep/serialize.hpp"

namespace latsep {

enum class Family { Any, IntegrallyConvex, HoleFree, OneConvex };

std::string to_string(Family family);
/// "any", "integrally-convex", "hole-free", "1-convex"; throws InvalidArgument.
Family family_from_string(const std::string& name);

bool in_family(const PointSet& set, Family family);

/// Lattice points of [0, dims_i - 1] in lexicographic order; bit i of a subset
/// mask selects point i.
std::vector<IntPoint> grid_points(const IntPoint& dims);

struct FamilyQuery {
  IntPoint dims;
  Family filter = Family::Any;
  std::size_t min_size = 1;
  std::size_t max_size = 0;  // 0 = no cap
};

/// Every nonempty subset of the grid in the family, in increasing mask order.
/// Throws GridTooLarge beyond 24 grid points.
void for_each_in_family(const FamilyQuery& query, const std::function<void(const PointSet&)>& visit);
std::vector<PointSet> enumerate_family(const FamilyQuery& query);

/// Every bipartition with both sides nonempty, the smallest point of S always
/// in A (the swap symmetry is skipped). B takes the other points by mask order.
void for_each_bipartition(const PointSet& set, const std::function<void(const Partition&)>& visit);

/// A condition that can be evaluated on a partition: "P<k>", "R" or "H".
struct ConditionSpec {
  enum class Kind { Parallelogram, Ray, Flag };
  Kind kind = Kind::Flag;
  int k = 2;

  static ConditionSpec parse(const std::string& text);
  [[nodiscard]] std::string name() const;
  /// Verdict plus its witness, serialized.
  [[nodiscard]] std::pair<bool, Json> evaluate(const Partition& partition) const;
};

struct Violation {
  Partition partition;
  bool left = false;
  bool right = false;
  Json left_witness;
  Json right_witness;
};

struct EquivalenceOptions {
  FamilyQuery family;
  ConditionSpec left;
  ConditionSpec right;
  unsigned jobs = 1;
  std::size_t chunk = 64;            // sets per work unit
  std::size_t max_violations = 0;    // stop after the chunk that reaches this many; 0 = never
  std::optional<std::filesystem::path> checkpoint;
  std::function<void(const Json&)> on_record;  // line-delimited records
};

struct EquivalenceReport {
  std::size_t sets = 0;
  std::size_t partitions = 0;
  std::vector<Violation> violations;
  bool complete = false;
  std::size_t cursor = 0;  // sets consumed, in family order
};

/// Checks left <=> right on every bipartition of every set of the family.
/// Work is split over `jobs` threads by chunks of sets; a single reducer
/// merges chunks in family order, so reports do not depend on `jobs`. With a
/// checkpoint path the cursor is saved after each merged chunk and a rerun
/// with the same options resumes from it.
EquivalenceReport test_equivalence(const EquivalenceOptions& options);

/// A partition with P(k=2) true and H false. When the 3-parallelogram
/// condition fails, `centroid_witness` holds three A points and three B points
/// with equal sums (hence equal centroids).
struct UnseparatedInstance {
  Partition partition;
  BlockingFlat blocking;
  std::optional<ParallelogramWitness> centroid_witness;
};

/// Scans the family in order and returns the first `limit` such partitions.
std::vector<UnseparatedInstance> find_unseparated(const FamilyQuery& query, std::size_t limit);

struct HuntOptions {
  std::size_t dim = 3;
  Coord box_lo = 0;
  Coord box_hi = 6;
  Coord span = 2;               // each sample lives in a random sub-box of this side
  std::size_t vertices = 5;
  std::size_t max_points = 14;  // larger samples are skipped
  std::uint64_t seed = 1;
  std::size_t budget = 100;     // number of polytopes sampled
  std::function<void(const Json&)> on_record;
};

struct HuntReport {
  std::size_t sampled = 0;
  std::size_t integrally_convex = 0;
  std::size_t partitions = 0;
  std::size_t parallelogram_true = 0;
  std::vector<Violation> counterexamples;  // P_d true, H false
};

/// Samples lattice points of random polytopes, keeps integrally convex ones,
/// and runs search_flag on every bipartition that satisfies the
/// d-parallelogram condition. Each sample picks a sub-box of side `span`
/// uniformly inside [box_lo, box_hi]^d and its vertices uniformly in that
/// sub-box (thin polytopes from the whole box are almost never integrally
/// convex). Deterministic for a given seed.
HuntReport conjecture_hunt(const HuntOptions& options);

/// The same test on one given set (no sampling or size cap).
HuntReport hunt_set(const PointSet& set, const std::function<void(const Json&)>& on_record = {});

Json to_json(const Violation& v);

}  // namespace latsep
