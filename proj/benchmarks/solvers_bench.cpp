#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "trimcache/trimcache.hpp"

namespace {

using namespace trimcache;

struct Instance {
  Scenario scenario;
  RateTable rates;
};

Instance complexity(int servers, int models, int beta) {
  auto s = fixtures::complexity_scenario(servers, models, beta, 5);
  auto r = build_rate_table(s);
  return {std::move(s), std::move(r)};
}

Instance small(std::uint64_t seed) {
  auto s = generate_scenario(fixtures::small_special(2, 6, 8), seed);
  auto r = build_rate_table(s);
  return {std::move(s), std::move(r)};
}

// Spec wall-time against M * I at fixed beta (M doubles).
void BM_SpecServers(benchmark::State& state) {
  const auto in = complexity(static_cast<int>(state.range(0)), 24, 6);
  SpecOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(trimcaching_spec(in.scenario, in.rates, opt));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpecServers)->RangeMultiplier(2)->Range(2, 16)->Complexity(benchmark::oN)->Unit(benchmark::kMillisecond);

// Spec wall-time against the number of shared blocks.
void BM_SpecBeta(benchmark::State& state) {
  const auto in = complexity(2, 32, static_cast<int>(state.range(0)));
  SpecOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(trimcaching_spec(in.scenario, in.rates, opt));
}
BENCHMARK(BM_SpecBeta)->DenseRange(4, 10)->Unit(benchmark::kMillisecond);

void BM_SpecExactSmall(benchmark::State& state) {
  const auto in = small(static_cast<std::uint64_t>(state.range(0)));
  SpecOptions opt;
  opt.quantizer = Quantizer::exact();
  for (auto _ : state) benchmark::DoNotOptimize(trimcaching_spec(in.scenario, in.rates, opt));
}
BENCHMARK(BM_SpecExactSmall)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_GenSmall(benchmark::State& state) {
  const auto in = small(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trimcaching_gen(in.scenario, in.rates));
}
BENCHMARK(BM_GenSmall)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_ExhaustiveSmall(benchmark::State& state) {
  const auto in = small(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(in.scenario, in.rates));
}
BENCHMARK(BM_ExhaustiveSmall)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_GenServers(benchmark::State& state) {
  const auto in = complexity(static_cast<int>(state.range(0)), 24, 6);
  for (auto _ : state) benchmark::DoNotOptimize(trimcaching_gen(in.scenario, in.rates));
}
BENCHMARK(BM_GenServers)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);

void BM_RateTable(benchmark::State& state) {
  ScenarioParams p;
  const auto s = generate_scenario(p, 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_rate_table(s));
}
BENCHMARK(BM_RateTable)->Unit(benchmark::kMicrosecond);

void BM_Fading(benchmark::State& state) {
  ScenarioParams p;
  const auto s = generate_scenario(p, 3);
  const auto r = build_rate_table(s);
  const auto x = trimcaching_gen(s, r).placement;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_fading(s, x, 100, 7));
}
BENCHMARK(BM_Fading)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
