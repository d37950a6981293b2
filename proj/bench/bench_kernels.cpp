// Serial reference versus OpenMP for the three parallel kernels: grid
// classification, cubical cell counting and sweep trials.

#include <benchmark/benchmark.h>

#include <random>

#include "xsect/grid.hpp"
#include "xsect/suites.hpp"
#include "xsect/sweep.hpp"
#include "xsect/topology.hpp"

using namespace xsect;

namespace {

struct ClassifyFixture {
  SceneData<3> scene = make_suite_density_scene(0, 42);
  Arrangement<3> arr{scene.planes, scene.bbox, scene.tol};
  SectionSet<3> sections = slice(*scene.shape, scene.planes, scene.shape->reach() / 100, scene.tol);
  Grid<3> grid = Grid<3>::covering(scene.bbox, 0.06);
};

const ClassifyFixture& classify_fixture() {
  static const ClassifyFixture f;
  return f;
}

void BM_ClassifySerial(benchmark::State& st) {
  const auto& f = classify_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(classify_grid_serial(f.grid, f.arr, f.sections, &*f.scene.shape));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.grid.size()));
}

void BM_ClassifyParallel(benchmark::State& st) {
  const auto& f = classify_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(classify_grid_parallel(f.grid, f.arr, f.sections, &*f.scene.shape));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.grid.size()));
}

std::vector<std::uint8_t> random_occupancy(const std::array<int, 3>& n) {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.4);
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(n[0]) * n[1] * n[2]);
  for (auto& v : occ) v = coin(rng);
  return occ;
}

void BM_CubicalSerial(benchmark::State& st) {
  const std::array<int, 3> n{128, 128, 128};
  const auto occ = random_occupancy(n);
  for (auto _ : st) benchmark::DoNotOptimize(cubical_counts_serial<3>(occ, n));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(occ.size()));
}

void BM_CubicalParallel(benchmark::State& st) {
  const std::array<int, 3> n{128, 128, 128};
  const auto occ = random_occupancy(n);
  for (auto _ : st) benchmark::DoNotOptimize(cubical_counts_parallel<3>(occ, n));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(occ.size()));
}

SweepConfig small_sweep() {
  SweepConfig cfg;
  cfg.from = 0.5;
  cfg.to = 2.5;
  cfg.steps = 3;
  cfg.trials = 4;
  cfg.voxel = 0.12;
  return cfg;
}

void BM_SweepSerial(benchmark::State& st) {
  const auto cfg = small_sweep();
  for (auto _ : st) benchmark::DoNotOptimize(run_sweep_serial(cfg));
  st.SetItemsProcessed(st.iterations() * cfg.steps * cfg.trials);
}

void BM_SweepParallel(benchmark::State& st) {
  const auto cfg = small_sweep();
  for (auto _ : st) benchmark::DoNotOptimize(run_sweep_parallel(cfg));
  st.SetItemsProcessed(st.iterations() * cfg.steps * cfg.trials);
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassifyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CubicalSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CubicalParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(1);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(1);

BENCHMARK_MAIN();
