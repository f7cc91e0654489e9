// Parallel Monte Carlo kernels against the serial path-materializing
// reference. Set OMP_NUM_THREADS to compare thread counts.

#include <benchmark/benchmark.h>

#include "kign/mc.hpp"

namespace {

const kign::KIgnoranceModel kModel(0.1, 1.0);

kign::PathConfig config(benchmark::State& state) {
  kign::PathConfig cfg;
  cfg.n_paths = state.range(0);
  cfg.n_steps = static_cast<int>(state.range(1));
  return cfg;
}

void set_counters(benchmark::State& state) {
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_EstimateY_Parallel(benchmark::State& state) {
  const auto payoff = kign::TerminalPayoff::indicator(0.0, 1.0);
  const auto cfg = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(kign::estimate_Y(kModel, payoff, 0.0, 0.5, cfg));
  set_counters(state);
}

void BM_EstimateY_Reference(benchmark::State& state) {
  const auto payoff = kign::TerminalPayoff::indicator(0.0, 1.0);
  const auto cfg = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(kign::reference::estimate_Y(kModel, payoff, 0.0, 0.5, cfg));
  set_counters(state);
}

void BM_EstimateW_Parallel(benchmark::State& state) {
  const auto payoff = kign::TerminalPayoff::quadratic();
  const auto cfg = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(kign::estimate_w(kModel, payoff, 0.0, 0.8, cfg));
  set_counters(state);
}

void BM_EstimateW_Reference(benchmark::State& state) {
  const auto payoff = kign::TerminalPayoff::quadratic();
  const auto cfg = config(state);
  for (auto _ : state) benchmark::DoNotOptimize(kign::reference::estimate_w(kModel, payoff, 0.0, 0.8, cfg));
  set_counters(state);
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({20000, 500})->Args({20000, 2000})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_EstimateY_Parallel)->Apply(sizes);
BENCHMARK(BM_EstimateY_Reference)->Apply(sizes);
BENCHMARK(BM_EstimateW_Parallel)->Apply(sizes);
BENCHMARK(BM_EstimateW_Reference)->Apply(sizes);

BENCHMARK_MAIN();
