#include <benchmark/benchmark.h>

#include <random>

#include "sgrass/forge.hpp"
#include "sgrass/grassmann.hpp"

namespace {

sgrass::CMatrix random_point(int T, int M, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  sgrass::CMatrix a(T, M);
  for (int r = 0; r < T; ++r)
    for (int c = 0; c < M; ++c) a(r, c) = {g(rng), g(rng)};
  return Eigen::HouseholderQR<sgrass::CMatrix>(a).householderQ() * sgrass::CMatrix::Identity(T, M);
}

void BM_ChordalDistance(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const int M = T / 2;
  std::mt19937_64 rng(1);
  const auto a = random_point(T, M, rng);
  const auto b = random_point(T, M, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sgrass::chordal_distance(a, b));
}
BENCHMARK(BM_ChordalDistance)->Arg(4)->Arg(8)->Arg(16);

void BM_ProjectorDistance(benchmark::State& state) {
  const int T = static_cast<int>(state.range(0));
  const int M = T / 2;
  std::mt19937_64 rng(1);
  const auto a = random_point(T, M, rng);
  const auto b = random_point(T, M, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sgrass::projector_distance(a, b));
}
BENCHMARK(BM_ProjectorDistance)->Arg(4)->Arg(8)->Arg(16);

void BM_MinChordalDistance(benchmark::State& state) {
  const auto book = sgrass::nr_codebook_4_2();
  for (auto _ : state) benchmark::DoNotOptimize(sgrass::min_chordal_distance(book));
}
BENCHMARK(BM_MinChordalDistance);

}  // namespace

BENCHMARK_MAIN();
