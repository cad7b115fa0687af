#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "spherebounds/lp_bound.hpp"
#include "spherebounds/oracle.hpp"
#include "spherebounds/packing_bounds.hpp"
#include "spherebounds/tetra_geometry.hpp"

namespace sb = spherebounds;

static void BM_LpBoundPiOver3(benchmark::State& state) {
  sb::LPConfig config;
  config.degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sb::lp_upper_bound(sb::ThetaCodeAngle(std::numbers::pi / 3), config).bound);
  }
}
BENCHMARK(BM_LpBoundPiOver3)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_SimplicialDensity(benchmark::State& state) {
  const sb::RadiiQuadruple q(0.7, 1.0, 1.3, 2.1);
  for (auto _ : state) benchmark::DoNotOptimize(sb::simplicial_density(q));
}
BENCHMARK(BM_SimplicialDensity);

static void BM_DensityBound(benchmark::State& state) {
  std::vector<double> radii;
  for (int i = 0; i < state.range(0); ++i) radii.push_back(1.0 + 0.1 * i);
  for (auto _ : state) benchmark::DoNotOptimize(sb::density_upper_bound(radii).bound);
}
BENCHMARK(BM_DensityBound)->Arg(3)->Arg(8);

static void BM_GreedyPacking(benchmark::State& state) {
  sb::PackingSpec spec;
  spec.species = {{1.0, 20}, {1.5, 10}};
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sb::greedy_contact_packing(spec, seed++).contact_number());
}
BENCHMARK(BM_GreedyPacking)->Unit(benchmark::kMillisecond);

static void BM_ContactBound(benchmark::State& state) {
  sb::PackingSpec spec;
  spec.species = {{1.0, 20}, {1.5, 10}, {2.2, 5}};
  for (auto _ : state) benchmark::DoNotOptimize(sb::compute_bounds(spec, sb::LPConfig{}).contact_bound);
}
BENCHMARK(BM_ContactBound)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
