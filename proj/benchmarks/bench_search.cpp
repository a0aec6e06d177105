#include <benchmark/benchmark.h>

#include "sqavoid/constructions.hpp"
#include "sqavoid/residues.hpp"
#include "sqavoid/search.hpp"

namespace {

using namespace sqavoid;

void BM_residue_set(benchmark::State& state) {
  const std::uint64_t m = state.range(0);
  for (auto _ : state) {
    ResidueSet rs(m, ResidueMode::enumerated);
    benchmark::DoNotOptimize(rs.size());
  }
}
BENCHMARK(BM_residue_set)->Arg(65)->Arg(4096)->Arg(65536);

void BM_avoidance_graph(benchmark::State& state) {
  const std::uint64_t m = state.range(0);
  for (auto _ : state) {
    AvoidanceGraph g(m);
    benchmark::DoNotOptimize(g.row(0));
  }
}
BENCHMARK(BM_avoidance_graph)->Arg(1009)->Arg(4993);

void BM_max_avoiding(benchmark::State& state) {
  const std::uint64_t m = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_avoiding(m));
  }
  state.SetLabel("exact clique search");
}
BENCHMARK(BM_max_avoiding)->Arg(101)->Arg(401)->Arg(997)->Unit(
    benchmark::kMillisecond);

void BM_product_set(benchmark::State& state) {
  const auto f = factorize(999'966'977ull);  // squarefree odd
  for (auto _ : state) {
    benchmark::DoNotOptimize(product_set(f));
  }
}
BENCHMARK(BM_product_set);

}  // namespace
