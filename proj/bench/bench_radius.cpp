// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "opradius/ensembles.hpp"
#include "opradius/kernels.hpp"
#include "opradius/radii.hpp"
#include "opradius/verifier.hpp"

using namespace opradius;

namespace {

ComplexMatrix ginibre(int n) {
  return sample(EnsembleSpec{EnsembleKind::ginibre, n, 1.0, 99}, 0).t;
}

std::vector<double> angles(std::size_t count) {
  std::vector<double> th(count);
  for (std::size_t k = 0; k < count; ++k) {
    th[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
  }
  return th;
}

void BM_ThetaScan(benchmark::State& state, Execution exec) {
  const ComplexMatrix t = ginibre(static_cast<int>(state.range(0)));
  const auto th = angles(512);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::theta_scan(t, th, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(th.size()));
}

void BM_SupportGrid(benchmark::State& state, Execution exec) {
  const ComplexMatrix t = ginibre(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::support_grid_max(t, 4096, exec));
}

void BM_NumericalRadius(benchmark::State& state, Execution exec) {
  const ComplexMatrix t = ginibre(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(t, 1e-10, exec));
}

void BM_RunCheck(benchmark::State& state) {
  CheckSpec c;
  c.bound_id = "eq1.2";
  c.ensemble = EnsembleSpec{EnsembleKind::ginibre, 6, 1.0, 5};
  c.trials = 200;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_check(c, threads));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ThetaScan, serial, Execution::serial)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_ThetaScan, parallel, Execution::parallel)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_SupportGrid, serial, Execution::serial)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_SupportGrid, parallel, Execution::parallel)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_NumericalRadius, serial, Execution::serial)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_NumericalRadius, parallel, Execution::parallel)->Arg(8)->Arg(32);
// 1 = serial trial loop, 0 = OpenMP default team.
BENCHMARK(BM_RunCheck)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
