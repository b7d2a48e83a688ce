#include <benchmark/benchmark.h>

#include "sgrass/forge.hpp"
#include "sgrass/linksim.hpp"

namespace {

// Dense NR entries 15..22 against the one-nonzero-per-row proposed table.
void BM_GramDense(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto H = sgrass::sample_rayleigh(N, 4, 3).H;
  const auto W = sgrass::nr_codebook_4_2()[20].matrix();
  for (auto _ : state) benchmark::DoNotOptimize(sgrass::gram_matrix(H, W));
}
BENCHMARK(BM_GramDense)->Arg(4)->Arg(32)->Arg(128);

void BM_GramSparse(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto H = sgrass::sample_rayleigh(N, 4, 3).H;
  const auto W = sgrass::to_ellpack(sgrass::proposed_codebook_4_2()[0].matrix());
  for (auto _ : state) benchmark::DoNotOptimize(sgrass::gram_matrix(H, W));
}
BENCHMARK(BM_GramSparse)->Arg(4)->Arg(32)->Arg(128);

void BM_SelectIndex(benchmark::State& state) {
  const auto book = state.range(0) ? sgrass::proposed_codebook_4_2() : sgrass::nr_codebook_4_2();
  const auto H = sgrass::sample_rayleigh(32, 4, 5).H;
  for (auto _ : state) benchmark::DoNotOptimize(sgrass::select_index(H, book, 10.0));
}
BENCHMARK(BM_SelectIndex)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
