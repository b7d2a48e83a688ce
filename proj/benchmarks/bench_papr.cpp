#include <benchmark/benchmark.h>

#include "sgrass/forge.hpp"
#include "sgrass/wavesim.hpp"

namespace {

void BM_PaprFrame(benchmark::State& state) {
  sgrass::WaveformConfig cfg;
  cfg.waveform = state.range(0) ? sgrass::Waveform::DftsOfdm : sgrass::Waveform::Ofdm;
  const auto W = sgrass::proposed_codebook_4_2()[6].matrix();  // every antenna active
  std::uint64_t frame = 0;
  for (auto _ : state) {
    const auto streams = sgrass::frame_streams(2, cfg, 9, frame++);
    const auto signals = sgrass::antenna_signals(W, streams, cfg);
    for (const auto& s : signals) benchmark::DoNotOptimize(sgrass::papr(s));
  }
}
BENCHMARK(BM_PaprFrame)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
