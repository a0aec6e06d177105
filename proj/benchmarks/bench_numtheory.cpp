#include <benchmark/benchmark.h>

#include "sqavoid/numtheory.hpp"

namespace {

using namespace sqavoid;

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void BM_factorize_random64(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(factorize(splitmix(seed) | 1));
  }
}
BENCHMARK(BM_factorize_random64);

void BM_factorize_range_1e6(benchmark::State& state) {
  for (auto _ : state) {
    std::uint64_t acc = 0;
    factorize_range(1, 1'000'000,
                    [&](const Factorization& f) { acc += omega(f); });
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_factorize_range_1e6);

void BM_jacobi(benchmark::State& state) {
  std::uint64_t seed = 7;
  const std::uint64_t p = 1'000'003;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi(splitmix(seed) % p, p));
  }
}
BENCHMARK(BM_jacobi);

void BM_primes_in_class(benchmark::State& state) {
  const auto span = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        primes_in_class(1'000'000, 1'000'000 + span, ResidueClass::three));
  }
}
BENCHMARK(BM_primes_in_class)->Arg(100'000)->Arg(1'000'000);

}  // namespace
