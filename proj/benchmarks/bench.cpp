#include <benchmark/benchmark.h>

#include "parity_sieve/approximation.hpp"
#include "parity_sieve/euler_constants.hpp"

using namespace parity_sieve;

static void BM_SieveNu(benchmark::State& state) {
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_nu(1, hi, SieveBound::below(1000)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveNu)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_SignedPowerSum(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(signed_power_sum(x, 100, 3));
}
BENCHMARK(BM_SignedPowerSum)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_PrefixSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prefix_series(1'000'000, 3));
}
BENCHMARK(BM_PrefixSeries)->Unit(benchmark::kMillisecond);

static void BM_EulerProduct(benchmark::State& state) {
  const auto cutoff = static_cast<std::uint64_t>(state.range(0));
  shared_primes(cutoff);
  for (auto _ : state) benchmark::DoNotOptimize(b_constant(3, cutoff));
}
BENCHMARK(BM_EulerProduct)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_SolveWk(benchmark::State& state) {
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_wk(3, 16, step));
}
BENCHMARK(BM_SolveWk)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_FSequence(benchmark::State& state) {
  const auto series = prefix_series(1'000'000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(f_sequence(series, 1000.0, 4));
}
BENCHMARK(BM_FSequence)->Unit(benchmark::kMillisecond);

static void BM_ContinuousApprox(benchmark::State& state) {
  const auto series = prefix_series(1'000'000, 3);
  const auto sol = solve_wk(3, 4, 1.0 / 1024);
  for (auto _ : state) benchmark::DoNotOptimize(continuous_approx(series, sol, 1'000'000, 2000));
}
BENCHMARK(BM_ContinuousApprox)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
