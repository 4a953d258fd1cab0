#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "citekit/evalstats.hpp"

using namespace citekit;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed, std::uint64_t modulus) {
  std::mt19937_64 gen(seed);
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(gen() % modulus);
  return v;
}

void BM_kendall_tau(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto x = random_values(n, 1, 1000), y = random_values(n, 2, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_kendall_tau)->Range(1 << 8, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_mann_whitney(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_values(n, 3, 50), b = random_values(n, 4, 50);
  for (auto _ : state) benchmark::DoNotOptimize(mann_whitney_u(a, b));
}
BENCHMARK(BM_mann_whitney)->Range(1 << 6, 1 << 12);

void BM_bootstrap_ci(benchmark::State& state) {
  auto values = random_values(1000, 5, 10000);
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_ci(values, 1000, 0.95, 42));
}
BENCHMARK(BM_bootstrap_ci);

}  // namespace

BENCHMARK_MAIN();
