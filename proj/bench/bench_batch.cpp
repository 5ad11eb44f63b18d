// Serial reference versus the OpenMP batch runner on short noisy runs.

#include <benchmark/benchmark.h>

#include "eqbearing/simulation.hpp"

namespace {

eqbearing::RunConfig bench_config(int runs) {
  eqbearing::RunConfig cfg;
  cfg.duration = 2.0;
  cfg.runs = runs;
  cfg.seed = 1;
  return cfg;
}

void BM_BatchSerial(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eqbearing::run_batch_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.steps());
}

void BM_BatchParallel(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eqbearing::run_batch(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.steps());
}

void BM_SingleRunStep(benchmark::State& state) {
  eqbearing::RunConfig cfg = bench_config(1);
  cfg.duration = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(eqbearing::run_single(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.steps());
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SingleRunStep)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
