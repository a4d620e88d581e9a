#include <random>

#include <benchmark/benchmark.h>

#include "nmd/correlations.hpp"
#include "nmd/kernel.hpp"
#include "nmd/scenarios.hpp"
#include "nmd/verification.hpp"

namespace {

void BM_AnalyticDecayGrid(benchmark::State& state) {
  const nmd::KernelParams k = nmd::strong_memory_kernel();
  const nmd::TimeGrid grid{10.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.points; ++i) sum += nmd::p_analytic(k, grid.at(i));
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AnalyticDecayGrid)->Arg(2000)->Arg(20000);

void BM_ConvolutionOracle(benchmark::State& state) {
  const nmd::TimeGrid grid{10.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(nmd::p_oracle_convolution(nmd::equal_rate_kernel(), grid));
}
BENCHMARK(BM_ConvolutionOracle)->Arg(2001)->Arg(4001)->Unit(benchmark::kMillisecond);

void BM_ClassicalCorrelationBruteForce(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const nmd::DensityMatrix rho = nmd::bell_to_density(nmd::random_bell_state(rng));
  nmd::BruteForceOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nmd::classical_correlation_bruteforce(rho, opts));
}
BENCHMARK(BM_ClassicalCorrelationBruteForce)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_ClosedFormDiscord(benchmark::State& state) {
  const nmd::BellCoefficients c{0.1, 0.16, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(nmd::discord(c));
}
BENCHMARK(BM_ClosedFormDiscord);

void BM_Trajectory(benchmark::State& state) {
  const nmd::TimeGrid grid{10.0, 2000};
  for (auto _ : state)
    benchmark::DoNotOptimize(nmd::trajectory({0.1, 0.16, 0.1}, nmd::equal_rate_kernel(), grid));
}
BENCHMARK(BM_Trajectory)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
