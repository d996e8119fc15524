#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rogame/packing.hpp"
#include "rogame/solver.hpp"

using namespace rogame;

static void BM_Solve(benchmark::State& state) {
  const Params params{static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                      static_cast<int>(state.range(2))};
  SolveConfig config;
  config.cache_enabled = state.range(3) != 0;
  config.record_certificate = false;
  SolveStats last;
  for (auto _ : state) {
    auto result = solve_instance(params, config);
    benchmark::DoNotOptimize(result.outcome);
    last = result.stats;
  }
  state.counters["solve_calls"] = static_cast<double>(last.solve_calls);
  state.counters["cache_hits"] =
      static_cast<double>(last.cache.won_hits + last.cache.lost_hits);
}
BENCHMARK(BM_Solve)
    ->ArgNames({"m", "k", "s", "cache"})
    ->Args({2, 3, 4, 1})
    ->Args({2, 3, 4, 0})
    ->Args({3, 4, 6, 1})
    ->Args({3, 4, 6, 0})
    ->Args({3, 6, 9, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_FitsExact(benchmark::State& state) {
  std::mt19937 rng(99);
  const int n = static_cast<int>(state.range(0));
  std::vector<PackingInstance> instances(64);
  for (auto& inst : instances) {
    for (int i = 0; i < n; ++i) inst.items.push_back(std::uniform_int_distribution<int>(1, 12)(rng));
    inst.capacities.assign(4, 3 * n);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fits_exact(instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_FitsExact)->Arg(8)->Arg(16)->Arg(24);

static void BM_Che(benchmark::State& state) {
  std::mt19937 rng(5);
  const Params params{3, 8, 12};
  std::vector<History> histories;
  for (int h = 0; h < 64; ++h) {
    std::vector<int> classes;
    const int n = std::uniform_int_distribution<int>(3, 10)(rng);
    for (int i = 0; i < n; ++i) classes.push_back(std::uniform_int_distribution<int>(1, 7)(rng));
    histories.push_back(History::from_classes(classes));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(che(histories[i++ % histories.size()], params));
}
BENCHMARK(BM_Che);

BENCHMARK_MAIN();
