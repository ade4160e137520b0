// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "latsep/catalog.hpp"
#include "latsep/constructions.hpp"
#include "latsep/convexity.hpp"
#include "latsep/error.hpp"
#include "latsep/explorer.hpp"
#include "latsep/instance.hpp"
#include "latsep/windows.hpp"
#include "oracles.hpp"

using namespace latsep;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  failures += !o.passed;
  std::printf("%s [%d] %s (%s; %.1f s)\n", o.passed ? "PASS" : "FAIL", number, title.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

Instance catalog_instance(const std::string& id) {
  for (const auto& e : load_catalog(builtin_catalog_json())) {
    if (e.id == id) {
      return instance_from_json(e.instance);
    }
  }
  throw UnknownEntry(id);
}

bool separable(const Partition& p) { return search_flag(p).holds; }

bool meets(const PointSet& points, const PointSet& hull) {
  for (const auto& x : points) {
    if (point_in_conv(x, hull)) {
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- criteria

Outcome catalog_examples() {
  // The cited verdicts, recomputed directly from the fixture instances.
  int wrong = 0;
  auto expect = [&](bool got, bool want) { wrong += got != want; };

  const Partition e44 = *catalog_instance("ex4.4").partition;
  expect(check_ray(e44).holds, true);
  expect(check_parallelogram(e44, 2).holds, false);
  expect(separable(e44), false);

  const Partition e45 = *catalog_instance("ex4.5").partition;
  expect(check_parallelogram(e45, 2).holds, true);
  expect(check_parallelogram(e45, 3).holds, false);
  expect(separable(e45), false);
  expect(is_k_convex(e45.a(), 1).holds, true);
  expect(is_k_convex(e45.a(), 2).holds, false);

  const Partition e47 = *catalog_instance("ex4.7").partition;
  PointSet with_origin = e47.a();
  with_origin.insert(IntPoint{0, 0, 0});
  expect(lattice_points_in_conv(e47.a()) == with_origin, true);
  expect(check_parallelogram(e47, 4).holds, true);
  expect(separable(e47), false);

  const Partition e48 = *catalog_instance("ex4.8").partition;
  expect(is_hole_free(e48.all()).holds, true);
  expect(meets(e48.a(), e48.b()), false);
  expect(meets(e48.b(), e48.a()), false);
  expect(check_parallelogram(e48, 3).holds, true);
  expect(separable(e48), false);

  // And the fixture claims themselves, timed.
  std::size_t claims = 0;
  std::size_t failed = 0;
  double seconds = 0;
  for (const char* id : {"ex4.4", "ex4.5", "ex4.7", "ex4.8"}) {
    const CatalogReport r = run_catalog(std::string(id));
    claims += r.results.size();
    failed += r.failures();
    seconds += r.seconds;
  }
  std::ostringstream d;
  d << wrong << " of 19 recomputed verdicts wrong, " << failed << " of " << claims
    << " fixture claims failed, fixtures ran in " << seconds << " s";
  return {wrong == 0 && failed == 0 && claims > 0 && seconds < 60, d.str()};
}

Outcome hole_tower() {
  const PointSet v(3, {{0, 0, 0}, {13, 0, 0}, {0, 7, 0}, {0, 0, 4}});
  const PointSet h1 = k_convex_hull(v, 1);
  const PointSet h2 = k_convex_hull(v, 2);
  const PointSet h3 = k_convex_hull(v, 3);
  const PointSet diff = h2.set_difference(h1);
  const bool in3 = h3.contains(IntPoint{6, 2, 1});
  const bool in2 = h2.contains(IntPoint{6, 2, 1});
  std::ostringstream d;
  d << "2-hull minus 1-hull = " << diff << ", (6,2,1) in 3-hull: " << in3 << ", in 2-hull: " << in2;
  return {diff == PointSet(3, {{4, 3, 1}}) && in3 && !in2, d.str()};
}

Outcome small_grid_equivalences() {
  EquivalenceOptions a;
  a.family = {IntPoint{3, 3}, Family::IntegrallyConvex};
  a.left = ConditionSpec::parse("P2");
  a.right = ConditionSpec::parse("H");
  const EquivalenceReport ra = test_equivalence(a);
  EquivalenceOptions b;
  b.family = {IntPoint{3, 3}, Family::HoleFree};
  b.left = ConditionSpec::parse("P3");
  b.right = ConditionSpec::parse("H");
  const EquivalenceReport rb = test_equivalence(b);
  std::ostringstream d;
  d << "integrally convex: " << ra.sets << " sets, " << ra.partitions << " partitions, " << ra.violations.size()
    << " violations of P2<=>H; hole free: " << rb.sets << " sets, " << rb.partitions << " partitions, "
    << rb.violations.size() << " violations of P3<=>H";
  return {ra.complete && rb.complete && ra.violations.empty() && rb.violations.empty() && ra.partitions > 0 &&
              rb.partitions > 0,
          d.str()};
}

Outcome unseparated_with_centroids() {
  const auto found = find_unseparated({IntPoint{4, 4}, Family::HoleFree}, 10);
  int bad = 0;
  for (const auto& f : found) {
    const Partition& p = f.partition;
    bool ok = oracle::parallelogram_holds(p, 2) && !oracle::flag_exists_2d(p) && verify_blocking(p, f.blocking);
    ok = ok && f.centroid_witness && f.centroid_witness->order == 3;
    if (ok) {
      IntPoint sa(2), sb(2);
      for (int i = 0; i < 3; ++i) {
        ok = ok && p.side_of(f.centroid_witness->a_points[i]) == Side::A &&
             p.side_of(f.centroid_witness->b_points[i]) == Side::B;
        sa += f.centroid_witness->a_points[i];
        sb += f.centroid_witness->b_points[i];
      }
      ok = ok && sa == sb;
    }
    bad += !ok;
  }
  std::ostringstream d;
  d << found.size() << " partitions with P2 true and H false among hole-free subsets of the 4x4 grid, " << bad
    << " without a checked order-3 equal-sum witness";
  if (!found.empty()) {
    d << "; first: " << to_json(found[0].partition).dump();
  }
  return {!found.empty() && bad == 0, d.str()};
}

Outcome equal_sum_triples() {
  std::mt19937_64 rng(20240601);
  int bad = 0;
  std::size_t interior_total = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = oracle::random_minimal_triangle(rng, -20, 20);
    const auto inner = oracle::triangle_non_vertices(t);
    interior_total += inner.size();
    const auto e = lemma49_triple(MinimalTriangle(t[0], t[1], t[2]));
    auto in = [&](const IntPoint& x) { return std::find(inner.begin(), inner.end(), x) != inner.end(); };
    bad += !(in(e.b1) && in(e.b2) && in(e.b3) && e.b1 + e.b2 + e.b3 == t[0] + t[1] + t[2]);
  }
  std::ostringstream d;
  d << "1000 random minimal triangles in [-20,20]^2 (" << interior_total << " interior points in total), " << bad
    << " failures";
  return {bad == 0, d.str()};
}

Outcome implication_chain() {
  std::size_t sets = 0, partitions = 0, separable_count = 0, p2_count = 0;
  int bad_h_p = 0, bad_p_r = 0, bad_oracle = 0;
  for_each_in_family({IntPoint{3, 3}, Family::OneConvex}, [&](const PointSet& s) {
    ++sets;
    const int n = static_cast<int>(s.size());
    for_each_bipartition(s, [&](const Partition& p) {
      ++partitions;
      const bool h = separable(p);
      bad_oracle += h != oracle::flag_exists_2d(p);
      if (h) {
        ++separable_count;
        // H implies the k-parallelogram condition for every k; k = |S| covers all orders that can occur.
        bad_h_p += !check_parallelogram(p, std::max(n, 2)).holds;
      }
      if (check_parallelogram(p, 2).holds) {
        ++p2_count;
        bad_p_r += !check_ray(p).holds;
      }
    });
  });
  std::ostringstream d;
  d << sets << " 1-convex sets, " << partitions << " partitions (" << separable_count << " with H, " << p2_count
    << " with P2); violations: H=>Pk " << bad_h_p << ", P2=>R " << bad_p_r << ", H vs oracle " << bad_oracle;
  return {bad_h_p == 0 && bad_p_r == 0 && bad_oracle == 0 && sets > 0, d.str()};
}

Outcome flag_search_vs_oracle() {
  std::size_t partitions = 0, separable_count = 0;
  int disagree = 0, bad_certificate = 0;
  for_each_in_family({IntPoint{4, 4}, Family::Any, 2, 8}, [&](const PointSet& s) {
    for_each_bipartition(s, [&](const Partition& p) {
      ++partitions;
      const auto v = search_flag(p);
      const bool want = oracle::flag_exists_2d(p);
      disagree += v.holds != want;
      separable_count += v.holds;
      const bool cert = v.holds ? verify_flag(p, std::get<SeparatingFlag>(*v.witness))
                                : verify_blocking(p, std::get<BlockingFlat>(*v.witness));
      bad_certificate += !cert;
    });
  });
  std::ostringstream d;
  d << partitions << " partitions of subsets with 2..8 points (smallest point fixed in A), " << separable_count
    << " separable; " << disagree << " disagreements with the pair-line oracle, " << bad_certificate
    << " certificates that failed to replay";
  return {disagree == 0 && bad_certificate == 0 && partitions > 0, d.str()};
}

Outcome windows() {
  int bad = 0;
  std::string first_bad;
  for (WindowRule rule : {WindowRule::Sqrt2HalfPlane, WindowRule::LexHalfPlane}) {
    for (Coord r = 1; r <= 50; ++r) {
      const Partition p = window_partition(rule, r);
      const SeparatingFlag f = rule == WindowRule::LexHalfPlane ? lex_half_plane_flag() : sqrt2_convergent_flag(r);
      const bool ok = verify_flag(p, f) && check_parallelogram(p, 2).holds && check_ray(p).holds && separable(p);
      if (!ok && first_bad.empty()) {
        first_bad = std::string(rule == WindowRule::LexHalfPlane ? "lex" : "sqrt2") + " r=" + std::to_string(r);
      }
      bad += !ok;
    }
  }
  std::ostringstream d;
  d << "radii 1..50 for both windows: supplied flag verifies and P, R, H hold; " << bad << " failing windows";
  if (!first_bad.empty()) {
    d << ", first " << first_bad;
  }
  return {bad == 0, d.str()};
}

}  // namespace

int main() {
  criterion(1, "catalog examples reproduce their verdicts", catalog_examples);
  criterion(2, "hole tower of the 13-7-4 simplex", hole_tower);
  criterion(3, "P2<=>H on integrally convex and P3<=>H on hole-free subsets of the 3x3 grid",
            small_grid_equivalences);
  criterion(4, "P2 without H in the 4x4 grid, each with an equal-centroid witness", unseparated_with_centroids);
  criterion(5, "equal-sum triples in random minimal triangles", equal_sum_triples);
  criterion(6, "implication chain over 1-convex subsets of the 3x3 grid", implication_chain);
  criterion(7, "flag search agrees with the brute-force oracle on the 4x4 grid", flag_search_vs_oracle);
  criterion(8, "windowed half-plane flags verify and P, R, H hold up to radius 50", windows);
  return failures == 0 ? 0 : 1;
}
