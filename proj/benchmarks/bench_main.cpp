#include <benchmark/benchmark.h>

#include "dynwalk/analytic.hpp"
#include "dynwalk/clocks.hpp"
#include "dynwalk/rng.hpp"
#include "dynwalk/walk.hpp"

namespace {

void BM_NormalQuantile(benchmark::State& state) {
  dynwalk::rng::Rng gen(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynwalk::analytic::normal_quantile(gen.uniform()));
  }
}
BENCHMARK(BM_NormalQuantile);

void BM_SampleClocks(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynwalk::clocks::sample_clocks(n, 1.0, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleClocks)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_SimulatePath(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto log = dynwalk::clocks::sample_clocks(n, 1.0, 7);
  dynwalk::walk::WalkSimulator sim(n);
  dynwalk::walk::WalkPath path;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    sim.run(log, ++seed, path);
    benchmark::DoNotOptimize(path.values.data());
  }
}
BENCHMARK(BM_SimulatePath)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_RunningMaxSup(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto log = dynwalk::clocks::sample_clocks(n, 1.0, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynwalk::walk::running_max_sup(n, log, 13));
  }
}
BENCHMARK(BM_RunningMaxSup)->Arg(1000)->Arg(10000);

void BM_GridDeviation(benchmark::State& state) {
  const auto log = dynwalk::clocks::sample_clocks(
      static_cast<std::uint64_t>(state.range(0)), 1.0, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynwalk::clocks::uniform_deviation(
        log, 0.05, dynwalk::clocks::DeviationMode::Grid, 0.2));
  }
}
BENCHMARK(BM_GridDeviation)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
