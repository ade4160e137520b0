#include <random>

#include "doctest.h"
#include "latsep/conditions.hpp"
#include "latsep/error.hpp"
#include "latsep/instance.hpp"
#include "latsep/serialize.hpp"
#include "latsep/windows.hpp"
#include "oracles.hpp"

using namespace latsep;

namespace {

Partition part(std::size_t d, std::vector<IntPoint> a, std::vector<IntPoint> b) {
  return Partition(PointSet(d, std::move(a)), PointSet(d, std::move(b)));
}

const Partition kDiagonals = part(2, {{0, 0}, {1, 1}}, {{1, 0}, {0, 1}});
const Partition kUnitVectors = part(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 0, 0}, {1, 1, 2}});

Partition box_minus_hole() {
  const PointSet box = box_points(IntPoint{0, 0, 0}, IntPoint{5, 4, 3});
  PointSet a = lattice_points_in_conv(PointSet(3, {{0, 0, 0}, {5, 0, 0}, {0, 4, 0}, {0, 0, 3}}));
  a = a.set_difference(PointSet(3, {{2, 1, 1}}));
  return Partition(a, box.set_difference(a));
}

// Random partition of a random subset of a small box; both sides nonempty.
Partition random_partition(std::mt19937_64& rng, std::size_t d, Coord side, std::size_t max_points) {
  std::uniform_int_distribution<Coord> coord(0, side - 1);
  while (true) {
    std::vector<IntPoint> pts;
    for (std::size_t i = 0; i < max_points; ++i) {
      IntPoint p(d);
      for (std::size_t c = 0; c < d; ++c) {
        p[c] = coord(rng);
      }
      pts.push_back(p);
    }
    const PointSet s(d, pts);
    if (s.size() < 2) {
      continue;
    }
    std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << s.size()) - 2);
    return oracle::split(s.points(), mask(rng));
  }
}

bool certificate_checks(const Partition& p, const Verdict<FlagCertificate>& v) {
  if (v.holds) {
    return verify_flag(p, std::get<SeparatingFlag>(*v.witness));
  }
  return verify_blocking(p, std::get<BlockingFlat>(*v.witness));
}

}  // namespace

TEST_SUITE("partitions") {
  TEST_CASE("invariants are enforced") {
    CHECK_THROWS_AS(part(1, {{0}}, {{0}}), InvalidArgument);
    CHECK_THROWS_AS(part(1, {}, {{0}}), InvalidArgument);
    CHECK_THROWS_AS(Partition(PointSet(1, {{0}}), PointSet(2, {{0, 1}})), DimensionMismatch);
    CHECK(kDiagonals.side_of(IntPoint{1, 1}) == Side::A);
    CHECK(kDiagonals.side_of(IntPoint{1, 0}) == Side::B);
    CHECK(kDiagonals.side_of(IntPoint{5, 5}) == Side::Empty);
    CHECK(kDiagonals.all().size() == 4);
  }
}

TEST_SUITE("parallelogram condition") {
  TEST_CASE("diagonals of the unit square fail at order 2") {
    const auto v = check_parallelogram(kDiagonals, 2);
    REQUIRE_FALSE(v.holds);
    CHECK(v.witness->order == 2);
    CHECK(v.witness->sum == IntPoint{1, 1});
  }

  TEST_CASE("box minus the captured point passes order 2 and fails order 3") {
    const Partition p = box_minus_hole();
    CHECK(check_parallelogram(p, 2).holds);
    const auto v = check_parallelogram(p, 3);
    REQUIRE_FALSE(v.holds);
    CHECK(v.witness->order == 3);
  }

  TEST_CASE("terminal simplex needs five points for a relation") {
    const Partition p = part(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}, {-1, -1, -1}}, {{0, 0, 0}});
    CHECK(check_parallelogram(p, 4).holds);
    const auto v = check_parallelogram(p, 5);
    REQUIRE_FALSE(v.holds);
    CHECK(v.witness->order == 5);
    CHECK(v.witness->sum == IntPoint{0, 0, 0});
  }

  TEST_CASE("verdicts and witnesses agree with multiset enumeration") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 400; ++trial) {
      const Partition p = random_partition(rng, 1 + trial % 3, 3, 5);
      for (int k = 1; k <= 4; ++k) {
        const auto v = check_parallelogram(p, k);
        REQUIRE(v.holds == oracle::parallelogram_holds(p, k));
        if (!v.holds) {
          const auto& w = *v.witness;
          CHECK(w.order <= k);
          CHECK(oracle::parallelogram_holds(p, w.order - 1));  // least order
          REQUIRE(w.a_points.size() == static_cast<std::size_t>(w.order));
          REQUIRE(w.b_points.size() == static_cast<std::size_t>(w.order));
          IntPoint sa(p.dim()), sb(p.dim());
          for (std::size_t i = 0; i < w.a_points.size(); ++i) {
            CHECK(p.side_of(w.a_points[i]) == Side::A);
            CHECK(p.side_of(w.b_points[i]) == Side::B);
            sa += w.a_points[i];
            sb += w.b_points[i];
          }
          CHECK(sa == w.sum);
          CHECK(sb == w.sum);
        }
      }
    }
  }
}

TEST_SUITE("ray condition") {
  TEST_CASE("examples") {
    CHECK(check_ray(kDiagonals).holds);
    CHECK(check_ray(part(1, {{0}, {1}, {2}}, {{-1}, {-2}})).holds);
    const auto v = check_ray(part(1, {{0}, {2}}, {{1}}));
    REQUIRE_FALSE(v.holds);
    CHECK(v.witness->line.trace == std::vector<IntPoint>{{0}, {1}, {2}});
    CHECK(v.witness->colors == std::vector<Side>{Side::A, Side::B, Side::A});
  }

  TEST_CASE("both evaluation routes agree with the collinearity oracle") {
    std::mt19937_64 rng(2);
    int fails = 0;
    for (int trial = 0; trial < 600; ++trial) {
      const Partition p = random_partition(rng, 1 + trial % 3, 4, 7);
      const bool want = oracle::ray_holds(p);
      fails += !want;
      const auto by_lines = check_ray_by_lines(p);
      const auto by_dirs = check_ray_by_directions(p);
      CHECK(by_lines.holds == want);
      CHECK(by_dirs.holds == want);
      CHECK(check_ray(p).holds == want);
      for (const auto* v : {&by_lines, &by_dirs}) {
        if (!v->holds) {
          // The witness line has an A run that is neither prefix nor suffix.
          const auto& c = v->witness->colors;
          int changes = 0;
          for (std::size_t i = 1; i < c.size(); ++i) {
            changes += c[i] != c[i - 1];
          }
          CHECK(changes >= 2);
          for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(p.side_of(v->witness->line.trace[i]) == c[i]);
          }
        }
      }
    }
    CHECK(fails > 0);
  }
}

TEST_SUITE("flags") {
  TEST_CASE("structural validation") {
    SeparatingFlag f;
    f.dim = 2;
    f.functionals = {AffineFunctional::from_integers(IntPoint{0, 0}, 1)};
    CHECK_THROWS_AS(validate_flag(f), InvalidFlag);
    f.functionals = {AffineFunctional::from_integers(IntPoint{1, 2}, 0),
                     AffineFunctional::from_integers(IntPoint{2, 4}, 1)};
    CHECK_THROWS_AS(validate_flag(f), InvalidFlag);
    f.functionals = {AffineFunctional::from_integers(IntPoint{1, 2, 3}, 0)};
    CHECK_THROWS_AS(validate_flag(f), InvalidFlag);
    f.functionals = {AffineFunctional::from_integers(IntPoint{1, 0}, 0),
                     AffineFunctional::from_integers(IntPoint{0, 1}, 0)};
    CHECK_NOTHROW(validate_flag(f));
  }

  TEST_CASE("a strict first level separates whatever the residual owner") {
    const Partition p = part(2, {{2, 0}, {3, 5}}, {{0, 0}, {-1, 4}});
    SeparatingFlag f;
    f.dim = 2;
    f.functionals = {AffineFunctional::from_integers(IntPoint{1, 0}, 1)};
    for (Side owner : {Side::A, Side::B, Side::Empty}) {
      f.residual_owner = owner;
      CHECK(verify_flag(p, f));
    }
    CHECK_FALSE(verify_flag(p.swapped(), f));
  }

  TEST_CASE("lexicographic flag on the lex window") {
    for (Coord r : {1, 5, 20}) {
      CHECK(verify_flag(window_partition(WindowRule::LexHalfPlane, r), lex_half_plane_flag()));
    }
    SeparatingFlag wrong = lex_half_plane_flag();
    wrong.residual_owner = Side::B;
    CHECK_FALSE(verify_flag(window_partition(WindowRule::LexHalfPlane, 3), wrong));
  }

  TEST_CASE("subspace chain of the lex flag is a point inside the second axis") {
    const auto chain = lex_flag_to_subspace_chain(lex_half_plane_flag());
    REQUIRE(chain.size() == 3);
    CHECK(chain[0].dimension() == 0);
    CHECK(chain[0].contains(IntPoint{0, 0}));
    CHECK(chain[1].dimension() == 1);
    CHECK(chain[1].contains(IntPoint{0, 7}));
    CHECK_FALSE(chain[1].contains(IntPoint{1, 0}));
    CHECK(chain[2].dimension() == 2);
  }

  TEST_CASE("one level in the plane gives a line inside the plane") {
    SeparatingFlag f;
    f.dim = 2;
    f.functionals = {AffineFunctional::from_integers(IntPoint{1, 1}, 3)};
    f.residual_owner = Side::A;
    const auto chain = lex_flag_to_subspace_chain(f);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].dimension() == 1);
    CHECK(chain[0].contains(IntPoint{1, 2}));
    CHECK(chain[1].dimension() == 2);
  }

  TEST_CASE("flags round-trip through the file format") {
    const SeparatingFlag f = sqrt2_convergent_flag(30);
    const SeparatingFlag g = parse_flag(to_json(f).dump());
    CHECK(g.functionals == f.functionals);
    CHECK(g.residual_owner == f.residual_owner);
    CHECK(verify_flag(window_partition(WindowRule::Sqrt2HalfPlane, 30), g));
  }
}

TEST_SUITE("flag search") {
  TEST_CASE("catalogued failures") {
    const auto v = search_flag(kDiagonals);
    CHECK_FALSE(v.holds);
    CHECK(certificate_checks(kDiagonals, v));
    const auto w = search_flag(kUnitVectors);
    CHECK_FALSE(w.holds);
    CHECK(certificate_checks(kUnitVectors, w));
    const Partition box = box_minus_hole();
    const auto u = search_flag(box);
    CHECK_FALSE(u.holds);
    CHECK(certificate_checks(box, u));
  }

  TEST_CASE("a coordinate gap needs a single level") {
    const Partition p = part(3, {{1, 0, 0}, {4, 2, 2}, {1, 5, -3}}, {{0, 0, 0}, {-2, 1, 1}, {0, 9, 9}});
    const auto v = search_flag(p);
    REQUIRE(v.holds);
    CHECK(std::get<SeparatingFlag>(*v.witness).functionals.size() == 1);
  }

  TEST_CASE("agrees with the pair-line oracle and the hull-intersection oracle in the plane") {
    std::mt19937_64 rng(3);
    int separable = 0;
    for (int trial = 0; trial < 1500; ++trial) {
      const Partition p = random_partition(rng, 2, 4, 2 + trial % 7);
      const bool want = oracle::flag_exists_2d(p);
      CHECK(want == !oracle::hulls_meet_2d(p.a().points(), p.b().points()));
      const auto v = search_flag(p);
      separable += want;
      CHECK(v.holds == want);
      CHECK(certificate_checks(p, v));
    }
    CHECK(separable > 100);
    CHECK(separable < 1400);
  }

  TEST_CASE("certificates replay in three dimensions") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      const Partition p = random_partition(rng, 3, 3, 3 + trial % 6);
      const auto v = search_flag(p);
      CHECK(certificate_checks(p, v));
      if (v.holds) {
        validate_flag(std::get<SeparatingFlag>(*v.witness));
      } else {
        const auto& b = std::get<BlockingFlat>(*v.witness);
        CHECK(b.live_a.is_subset_of(p.a()));
        CHECK(b.live_b.is_subset_of(p.b()));
      }
    }
  }

  TEST_CASE("aggregated and per-point separators have the same zero set") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      const Partition p = random_partition(rng, 2 + trial % 2, 3, 6);
      const auto g = detail::relative_interior_separator(p.a(), p.b());
      const auto h = detail::relative_interior_separator_per_point(p.a(), p.b());
      REQUIRE(g.has_value() == h.has_value());
      if (g) {
        for (const auto& x : p.all()) {
          CHECK((*g)(x).sign() == (*h)(x).sign());
          CHECK((*g)(x).sign() * (p.side_of(x) == Side::A ? 1 : -1) >= 0);
        }
      }
    }
  }

  TEST_CASE("separable partitions satisfy every parallelogram order") {
    std::mt19937_64 rng(6);
    int separable = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const Partition p = random_partition(rng, 2 + trial % 2, 3, 5);
      if (search_flag(p).holds) {
        ++separable;
        const int n = static_cast<int>(p.all().size());
        CHECK(check_parallelogram(p, n).holds);
      }
    }
    CHECK(separable > 0);
  }

  TEST_CASE("verdict is invariant under translation and unimodular maps") {
    std::mt19937_64 rng(7);
    // Rows of a few unimodular matrices (determinant +-1).
    const std::vector<std::array<std::array<Coord, 2>, 2>> maps{
        {{{1, 1}, {0, 1}}}, {{{2, 1}, {1, 1}}}, {{{0, 1}, {1, 0}}}, {{{1, -3}, {-1, 4}}}};
    for (int trial = 0; trial < 300; ++trial) {
      const Partition p = random_partition(rng, 2, 4, 6);
      const bool base = search_flag(p).holds;
      const auto& m = maps[trial % maps.size()];
      const IntPoint shift{static_cast<Coord>(trial % 7) - 3, static_cast<Coord>(trial % 5) - 2};
      auto image = [&](const PointSet& s) {
        std::vector<IntPoint> out;
        for (const auto& x : s) {
          out.push_back(IntPoint{m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]} + shift);
        }
        return PointSet(2, out);
      };
      CHECK(search_flag(Partition(image(p.a()), image(p.b()))).holds == base);
    }
  }
}

TEST_SUITE("windows") {
  // x2 >= sqrt(2) x1 decided by case analysis on signs and squares.
  bool above_sqrt2_line(Coord x1, Coord x2) {
    if (x1 <= 0 && x2 >= 0) {
      return true;
    }
    if (x1 >= 0 && x2 < 0) {
      return false;
    }
    if (x1 > 0) {
      return x2 * x2 >= 2 * x1 * x1;
    }
    return x2 * x2 <= 2 * x1 * x1;
  }

  TEST_CASE("window sides follow their definitions") {
    for (Coord r : {1, 4, 13}) {
      const Partition s = window_partition(WindowRule::Sqrt2HalfPlane, r);
      const Partition l = window_partition(WindowRule::LexHalfPlane, r);
      CHECK(s.all().size() == static_cast<std::size_t>((2 * r + 1) * (2 * r + 1)));
      for (const auto& x : s.all()) {
        CHECK((s.side_of(x) == Side::A) == above_sqrt2_line(x[0], x[1]));
        CHECK((sqrt2_side(x[0], x[1]) >= 0) == above_sqrt2_line(x[0], x[1]));
        const bool lex = x[0] > 0 || (x[0] == 0 && x[1] >= 0);
        CHECK((l.side_of(x) == Side::A) == lex);
      }
    }
  }

  TEST_CASE("convergent flags put only the origin on the line") {
    for (Coord r = 1; r <= 40; ++r) {
      const SeparatingFlag f = sqrt2_convergent_flag(r);
      REQUIRE(f.functionals.size() == 1);
      const Partition p = window_partition(WindowRule::Sqrt2HalfPlane, r);
      for (const auto& x : p.all()) {
        if (!x.is_zero()) {
          CHECK(f.functionals[0](x).sign() != 0);
        }
      }
      CHECK(verify_flag(p, f));
    }
  }
}
