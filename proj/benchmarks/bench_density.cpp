#include <benchmark/benchmark.h>

#include "sqavoid/density.hpp"

namespace {

using namespace sqavoid;

void BM_density_scan(benchmark::State& state) {
  const std::uint64_t x = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        density_scan(x, 0.5, 3.0, TailVariant::tail_product, 1));
  }
}
BENCHMARK(BM_density_scan)->Arg(100'000)->Arg(1'000'000)->Unit(
    benchmark::kMillisecond);

void BM_tv_distance(benchmark::State& state) {
  const auto window = primes_in_class(100, 1000, ResidueClass::three);
  std::vector<PrimeClassSet> windows{window};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tv_distance_empirical(state.range(0), windows));
  }
}
BENCHMARK(BM_tv_distance)->Arg(100'000)->Arg(1'000'000)->Unit(
    benchmark::kMillisecond);

}  // namespace
