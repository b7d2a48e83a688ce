#include "sgrass/wavesim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sgrass/error.hpp"
#include "sgrass/fft.hpp"
#include "sgrass/linksim.hpp"
#include "sgrass/parallel.hpp"

namespace sgrass {
namespace {

constexpr std::size_t kFramesPerChunk = 64;

template <typename PrecoderFor>
PaprSamples run_frames(int M, const WaveformConfig& cfg, std::size_t trials, std::uint64_t seed,
                       const PaprOptions& options, PrecoderFor precoder_for) {
  cfg.validate();
  if (trials == 0) fail(ErrorCode::ConfigError, "trials must be >= 1");
  const std::size_t chunks = (trials + kFramesPerChunk - 1) / kFramesPerChunk;
  std::vector<std::vector<double>> partial(chunks);
  parallel_chunks(chunks, [&](std::size_t chunk) {
    auto& out = partial[chunk];
    const std::size_t begin = chunk * kFramesPerChunk;
    const std::size_t end = std::min(trials, begin + kFramesPerChunk);
    for (std::size_t f = begin; f < end; ++f) {
      const CMatrix streams = frame_streams(M, cfg, seed, f);
      const CMatrix w = precoder_for(f);
      double sum = 0.0;
      int active = 0;
      for (const auto& x : antenna_signals(w, streams, cfg)) {
        if (x.squaredNorm() == 0.0) continue;
        const double p = papr(x);
        if (options.antenna_mean) {
          sum += p;
          ++active;
        } else {
          out.push_back(p);
        }
      }
      if (options.antenna_mean && active > 0) out.push_back(sum / active);
    }
  });
  PaprSamples samples{{}, cfg, trials, seed};
  for (const auto& p : partial) samples.values.insert(samples.values.end(), p.begin(), p.end());
  return samples;
}

}  // namespace

void WaveformConfig::validate() const {
  if (subcarriers < 1) fail(ErrorCode::ConfigError, "subcarriers must be >= 1");
  if (fft_size < subcarriers) fail(ErrorCode::ConfigError, "fft size must be >= subcarriers");
  if (oversampling < 1) fail(ErrorCode::ConfigError, "oversampling must be >= 1");
  if (!is_power_of_two(static_cast<std::size_t>(fft_size) * oversampling)) {
    fail(ErrorCode::ConfigError, "fft size times oversampling must be a power of two");
  }
}

CVector modulate(std::size_t count, Modulation modulation, Rng& rng) {
  if (count == 0) fail(ErrorCode::ConfigError, "symbol count must be >= 1");
  static const double h = 1.0 / std::sqrt(2.0);
  // Index bits b1 b0; adjacent points differ in one bit.
  static const cdouble qam4[4] = {{h, h}, {h, -h}, {-h, h}, {-h, -h}};
  static const cdouble qpsk[4] = {{1, 0}, {0, 1}, {0, -1}, {-1, 0}};
  const cdouble* table = modulation == Modulation::Qam4 ? qam4 : qpsk;
  std::uniform_int_distribution<int> pick(0, 3);
  CVector s(static_cast<Eigen::Index>(count));
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = table[pick(rng)];
  return s;
}

CVector modulate(std::size_t count, Modulation modulation, std::uint64_t seed) {
  Rng rng = substream(seed, Stream::Symbols, 0);
  return modulate(count, modulation, rng);
}

CVector dft_spread(const CVector& symbols) { return dft(symbols); }

CMatrix precode_grid(const CMatrix& w, const CMatrix& streams) {
  if (w.cols() != streams.rows()) {
    fail(ErrorCode::DimensionMismatch, "precoder columns != stream count");
  }
  return w * streams;
}

CVector to_time_domain(const CVector& row, const WaveformConfig& cfg) {
  cfg.validate();
  if (row.size() != cfg.subcarriers) fail(ErrorCode::ConfigError, "row length != subcarriers");
  const Eigen::Index n = cfg.output_length();
  const Eigen::Index offset = cfg.subcarriers / 2;
  CVector spectrum = CVector::Zero(n);
  for (Eigen::Index k = 0; k < row.size(); ++k) {
    const Eigen::Index f = k - offset;
    spectrum((f % n + n) % n) = row(k);
  }
  return fft(spectrum, true);
}

double papr(const CVector& x) {
  const double total = x.squaredNorm();
  if (x.size() == 0 || total == 0.0) fail(ErrorCode::ZeroSignal, "signal is all zero");
  const double peak = x.cwiseAbs2().maxCoeff();
  return peak / (total / static_cast<double>(x.size()));
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<std::pair<double, double>> ccdf(const PaprSamples& samples,
                                            const std::vector<double>& thresholds_db) {
  if (samples.values.empty()) fail(ErrorCode::ConfigError, "no PAPR samples");
  std::vector<double> sorted_db(samples.values.size());
  std::transform(samples.values.begin(), samples.values.end(), sorted_db.begin(), to_db);
  std::sort(sorted_db.begin(), sorted_db.end());
  const double n = static_cast<double>(sorted_db.size());
  std::vector<std::pair<double, double>> curve;
  curve.reserve(thresholds_db.size());
  for (double t : thresholds_db) {
    const auto above = sorted_db.end() - std::upper_bound(sorted_db.begin(), sorted_db.end(), t);
    curve.emplace_back(t, static_cast<double>(above) / n);
  }
  return curve;
}

double ccdf_threshold_db(const PaprSamples& samples, double probability) {
  if (samples.values.empty()) fail(ErrorCode::ConfigError, "no PAPR samples");
  if (!(probability > 0.0 && probability < 1.0)) {
    fail(ErrorCode::InvalidRange, "probability must lie in (0, 1)");
  }
  std::vector<double> sorted = samples.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto k = static_cast<std::size_t>(std::ceil(n * (1.0 - probability) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, sorted.size());
  return to_db(sorted[k - 1]);
}

CMatrix row_sparse_precoder(int T, int M, int ell, const std::vector<double>& thetas,
                            std::uint64_t seed) {
  if (M < 1 || T < 1) fail(ErrorCode::DimensionMismatch, "T and M must be positive");
  if (ell < 1 || ell > M) fail(ErrorCode::InvalidEll, "ell must lie in [1, M]");
  if (!thetas.empty() && static_cast<int>(thetas.size()) < ell) {
    fail(ErrorCode::InvalidEll, "need at least ell phases");
  }
  const double magnitude = std::sqrt(static_cast<double>(M) / (static_cast<double>(ell) * T));
  Rng rng = substream(seed, Stream::Precoder, 0);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  CMatrix w = CMatrix::Zero(T, M);
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < ell; ++i) {
      const double theta = thetas.empty() ? phase(rng) : thetas[i];
      w(t, (t + i) % M) = std::polar(magnitude, theta);
    }
  }
  return w;
}

CMatrix frame_streams(int M, const WaveformConfig& cfg, std::uint64_t seed, std::uint64_t frame) {
  Rng rng = substream(seed, Stream::Symbols, frame);
  CMatrix streams(M, cfg.subcarriers);
  for (int m = 0; m < M; ++m) {
    CVector s = modulate(static_cast<std::size_t>(cfg.subcarriers), cfg.modulation, rng);
    if (cfg.waveform == Waveform::DftsOfdm) s = dft_spread(s);
    streams.row(m) = s.transpose();
  }
  return streams;
}

std::vector<CVector> antenna_signals(const CMatrix& w, const CMatrix& streams,
                                     const WaveformConfig& cfg) {
  const CMatrix grid = precode_grid(w, streams);
  std::vector<CVector> out;
  out.reserve(grid.rows());
  for (Eigen::Index t = 0; t < grid.rows(); ++t) {
    out.push_back(to_time_domain(grid.row(t).transpose(), cfg));
  }
  return out;
}

PaprSamples papr_experiment(const Codebook& book, const WaveformConfig& cfg, std::size_t trials,
                            std::uint64_t seed, const PaprOptions& options) {
  if (book.size() == 0) fail(ErrorCode::ConfigError, "codebook is empty");
  if (options.selection == Selection::Channel && options.receive_antennas < 1) {
    fail(ErrorCode::ConfigError, "receive antennas must be >= 1");
  }
  return run_frames(book.M, cfg, trials, seed, options, [&](std::size_t f) -> CMatrix {
    if (options.selection == Selection::Channel) {
      const CMatrix H = sample_rayleigh(options.receive_antennas, book.T, seed, f).H;
      return book[select_index_gain(H, book)].matrix();
    }
    Rng rng = substream(seed, Stream::Precoder, f);
    std::uniform_int_distribution<std::size_t> pick(0, book.size() - 1);
    return book[pick(rng)].matrix();
  });
}

PaprSamples papr_experiment(const RowSparseSpec& spec, const WaveformConfig& cfg,
                            std::size_t trials, std::uint64_t seed, const PaprOptions& options) {
  const CMatrix fixed = row_sparse_precoder(spec.T, spec.M, spec.ell, spec.thetas, seed);
  return run_frames(spec.M, cfg, trials, seed, options, [&](std::size_t f) -> CMatrix {
    if (!spec.thetas.empty()) return fixed;
    return row_sparse_precoder(spec.T, spec.M, spec.ell, {}, splitmix64(seed ^ splitmix64(f)));
  });
}

}  // namespace sgrass
