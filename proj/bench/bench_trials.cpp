// Serial reference against OpenMP trial parallelism.

#include <benchmark/benchmark.h>

#include "splaylab/experiment.hpp"

namespace {

using namespace splaylab;

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_PreorderRun(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kPreorderInsert;
  cfg.n = static_cast<std::size_t>(state.range(0));
  cfg.trials = 32;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.trials * cfg.n));
}
BENCHMARK(BM_PreorderRun)
    ->ArgsProduct({{1 << 10, 1 << 14}, {0, 1}})
    ->ArgNames({"n", "parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_BalancedRun(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kBalancedTraversal;
  cfg.n = static_cast<std::size_t>(state.range(0));
  cfg.start = StartMode::kRandom;
  cfg.trials = 8;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, exec_of(state)));
}
BENCHMARK(BM_BalancedRun)
    ->ArgsProduct({{(1 << 14) - 1}, {0, 1}})
    ->ArgNames({"n", "parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_FuzzRandomPart(benchmark::State& state) {
  FuzzConfig cfg;
  cfg.max_exhaustive = 0;
  cfg.trials = 64;
  cfg.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fuzz_invariants(cfg, exec_of(state)));
}
BENCHMARK(BM_FuzzRandomPart)
    ->ArgsProduct({{256}, {0, 1}})
    ->ArgNames({"n", "parallel"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
