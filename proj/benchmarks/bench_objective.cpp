#include <benchmark/benchmark.h>

#include "mixar/objective.hpp"
#include "mixar/simulate.hpp"
#include "mixar/strategy.hpp"

namespace {

std::vector<double> series(std::size_t T) {
  return mixar::simulate_series(mixar::ModelSpec::mixed({0.7}, {0.2}), mixar::StableParams{}, T, 42);
}

void BM_ContextBuild(benchmark::State& state) {
  const auto y = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto ctx = mixar::ObjectiveContext::build(y, 2);
    benchmark::DoNotOptimize(ctx.A2T());
  }
}
BENCHMARK(BM_ContextBuild)->Arg(100)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_RtEvaluation(benchmark::State& state) {
  const auto y = series(static_cast<std::size_t>(state.range(0)));
  const auto ctx = mixar::ObjectiveContext::build(y, 2);
  const auto spec = mixar::ModelSpec::mixed({0.6}, {0.3});
  for (auto _ : state) benchmark::DoNotOptimize(ctx.rt(spec));
}
BENCHMARK(BM_RtEvaluation)->Arg(100)->Arg(200)->Arg(500)->Unit(benchmark::kMicrosecond);

void BM_Identify(benchmark::State& state) {
  const auto y = series(200);
  for (auto _ : state) {
    auto report = mixar::estimate_candidates(y, 2);
    benchmark::DoNotOptimize(report.selected);
  }
}
BENCHMARK(BM_Identify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
