// Serial references against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "atlas/dataset.hpp"
#include "atlas/grid.hpp"
#include "atlas/path_planner.hpp"

using namespace atlas;

namespace {

OccupancyGrid random_grid(std::uint64_t seed, int w, int h, double density, double res) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution occ(density);
  OccupancyGrid g(w, h, res);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) g.set({c, r}, occ(rng));
  return g;
}

const OccupancyGrid& map_grid() {
  static const auto g = random_grid(1, 400, 240, 0.02, 0.05);
  return g;
}

void BM_InflateSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(inflate_obstacles_serial(map_grid(), 0.18));
}
void BM_InflateParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(inflate_obstacles(map_grid(), 0.18));
}

std::vector<PathQuery> queries(const std::vector<OccupancyGrid>& grids) {
  std::mt19937_64 rng(7);
  std::vector<PathQuery> qs;
  for (const auto& g : grids) {
    const double w = g.width() * g.resolution(), h = g.height() * g.resolution();
    std::uniform_real_distribution<double> x(0, w), y(0, h);
    qs.push_back({&g, Pose(x(rng), y(rng)), Pose(x(rng), y(rng))});
  }
  return qs;
}

const std::vector<OccupancyGrid>& path_grids() {
  static const auto grids = [] {
    std::vector<OccupancyGrid> v;
    for (std::uint64_t i = 0; i < 64; ++i) v.push_back(random_grid(i, 120, 120, 0.2, 1.0));
    return v;
  }();
  return grids;
}

void BM_PlanPathsSerial(benchmark::State& st) {
  const auto qs = queries(path_grids());
  for (auto _ : st) benchmark::DoNotOptimize(plan_paths_serial(qs));
}
void BM_PlanPathsParallel(benchmark::State& st) {
  const auto qs = queries(path_grids());
  for (auto _ : st) benchmark::DoNotOptimize(plan_paths(qs));
}

void BM_DatasetSerial(benchmark::State& st) {
  const auto spec = default_dataset_spec(static_cast<std::size_t>(st.range(0)), 0.75, 3);
  for (auto _ : st) benchmark::DoNotOptimize(generate_dataset_serial(spec));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
void BM_DatasetParallel(benchmark::State& st) {
  const auto spec = default_dataset_spec(static_cast<std::size_t>(st.range(0)), 0.75, 3);
  for (auto _ : st) benchmark::DoNotOptimize(generate_dataset(spec));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_InflateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InflateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanPathsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanPathsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DatasetSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DatasetParallel)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
