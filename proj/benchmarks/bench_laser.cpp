#include <benchmark/benchmark.h>

#include "laser/generators.hpp"
#include "laser/graph.hpp"
#include "laser/measures.hpp"
#include "laser/rewire.hpp"

namespace {

laser::Graph seeded_er(laser::NodeId n, double avg_degree, std::uint64_t seed) {
  laser::GeneratorSpec spec;
  spec.kind = laser::GraphKind::kErdosRenyi;
  spec.nodes = n;
  spec.avg_degree = avg_degree;
  spec.seed = seed;
  return laser::generate(spec);
}

void BM_ComputeMeasures(benchmark::State& state) {
  const auto g = seeded_er(static_cast<laser::NodeId>(state.range(0)), 10.0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(laser::compute_mu_nu(g, 4, 8));
  }
}
BENCHMARK(BM_ComputeMeasures)->Arg(100)->Arg(400)->Arg(1000);

void BM_WalkCounts(benchmark::State& state) {
  const auto g = seeded_er(500, 10.0, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        laser::walk_count_matrix(g, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_WalkCounts)->Arg(2)->Arg(8)->Arg(16);

void BM_RewireDense(benchmark::State& state) {
  const auto g = seeded_er(static_cast<laser::NodeId>(state.range(0)), 10.0, 3);
  laser::RewireConfig config;
  config.snapshots = 2;
  config.rho_density = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        laser::laser_rewire(g, config, nullptr, laser::RewireEngine::kDense));
  }
}
BENCHMARK(BM_RewireDense)->Arg(200)->Arg(800);

void BM_RewireStreaming(benchmark::State& state) {
  const auto g = seeded_er(static_cast<laser::NodeId>(state.range(0)), 10.0, 3);
  laser::RewireConfig config;
  config.snapshots = 2;
  config.rho_density = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(laser::laser_rewire(g, config, nullptr,
                                                 laser::RewireEngine::kRowStreaming));
  }
}
BENCHMARK(BM_RewireStreaming)->Arg(200)->Arg(800)->Arg(3000);

void BM_TotalResistance(benchmark::State& state) {
  laser::Graph g;
  for (std::uint64_t seed = 0;; ++seed) {
    g = seeded_er(static_cast<laser::NodeId>(state.range(0)), 10.0, seed);
    if (laser::is_connected(g)) break;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(laser::total_effective_resistance(g));
  }
}
BENCHMARK(BM_TotalResistance)->Arg(100)->Arg(300);

void BM_SpectralGap(benchmark::State& state) {
  laser::Graph g;
  for (std::uint64_t seed = 4;; ++seed) {
    g = seeded_er(static_cast<laser::NodeId>(state.range(0)), 10.0, seed);
    if (laser::is_connected(g)) break;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(laser::spectral_gap(g));
  }
}
BENCHMARK(BM_SpectralGap)->Arg(100)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
