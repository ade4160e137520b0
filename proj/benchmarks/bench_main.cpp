#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "latsep/conditions.hpp"
#include "latsep/convexity.hpp"
#include "latsep/explorer.hpp"
#include "latsep/lp.hpp"
#include "latsep/windows.hpp"

using namespace latsep;

namespace {

// A bounded random program: box rows plus random dense rows.
LinearProgram random_program(std::size_t vars, std::size_t rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-9, 9);
  LinearProgram lp;
  lp.num_vars = vars;
  for (std::size_t v = 0; v < vars; ++v) {
    RatVector e(vars, Rational(0));
    e[v] = 1;
    lp.add(e, Relation::LessEqual, Rational(20));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    RatVector c;
    for (std::size_t v = 0; v < vars; ++v) {
      c.emplace_back(coef(rng));
    }
    lp.add(c, Relation::LessEqual, Rational(30 + coef(rng)));
  }
  for (std::size_t v = 0; v < vars; ++v) {
    lp.objective.emplace_back(coef(rng));
  }
  return lp;
}

// Eight-point partitions of the 4x4 grid, the workload of the exhaustive flag check.
std::vector<Partition> grid_partitions(std::size_t count) {
  std::vector<Partition> out;
  for_each_in_family({IntPoint{4, 4}, Family::Any, 8, 8}, [&](const PointSet& s) {
    if (out.size() >= count) {
      return;
    }
    for_each_bipartition(s, [&](const Partition& p) {
      if (out.size() < count) {
        out.push_back(p);
      }
    });
  });
  return out;
}

void BM_LpSolve(benchmark::State& state) {
  const auto lp = random_program(state.range(0), state.range(0) * 2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(lp));
  }
}
BENCHMARK(BM_LpSolve)->Arg(3)->Arg(6)->Arg(12);

void BM_LpSolveRational(benchmark::State& state) {
  const auto lp = random_program(state.range(0), state.range(0) * 2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_rational(lp));
  }
}
BENCHMARK(BM_LpSolveRational)->Arg(3)->Arg(6)->Arg(12);

void BM_SearchFlagGrid(benchmark::State& state) {
  const auto parts = grid_partitions(256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_flag(parts[i++ % parts.size()]));
  }
}
BENCHMARK(BM_SearchFlagGrid);

void BM_SearchFlagWindow(benchmark::State& state) {
  const Partition p = window_partition(WindowRule::Sqrt2HalfPlane, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_flag(p));
  }
}
BENCHMARK(BM_SearchFlagWindow)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Parallelogram(benchmark::State& state) {
  const Partition p = window_partition(WindowRule::LexHalfPlane, 10);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_parallelogram(p, k));
  }
}
BENCHMARK(BM_Parallelogram)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Ray(benchmark::State& state) {
  const Partition p = window_partition(WindowRule::LexHalfPlane, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_ray(p));
  }
}
BENCHMARK(BM_Ray)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_KConvexHull(benchmark::State& state) {
  const PointSet v(3, {{0, 0, 0}, {13, 0, 0}, {0, 7, 0}, {0, 0, 4}});
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_convex_hull(v, k));
  }
}
BENCHMARK(BM_KConvexHull)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
