#include <benchmark/benchmark.h>

#include "polyassign/claims.hpp"
#include "polyassign/scenarios.hpp"
#include "polyassign/search.hpp"

namespace {

using namespace polyassign;

SearchConfig ring_config(int restarts) {
  const Scenario base = build(PaperCase::kCircleUniform, CaseParams{.n = 6});
  SearchConfig config;
  config.shape = base.shape;
  config.metric = base.metric;
  config.capacities = base.capacities;
  config.customers = 6;
  config.restarts = restarts;
  config.seed = 7;
  return config;
}

void BM_SearchSerial(benchmark::State& state) {
  const SearchConfig config = ring_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_ratio_serial(config));
}

void BM_SearchParallel(benchmark::State& state) {
  const SearchConfig config = ring_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_ratio(config));
}

void BM_LedgerSerial(benchmark::State& state) {
  const LedgerParams params{.n_min = 3, .n_max = static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(full_ledger_serial(params));
}

void BM_LedgerParallel(benchmark::State& state) {
  const LedgerParams params{.n_min = 3, .n_max = static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(full_ledger(params));
}

}  // namespace

BENCHMARK(BM_SearchSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SearchParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LedgerSerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LedgerParallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
