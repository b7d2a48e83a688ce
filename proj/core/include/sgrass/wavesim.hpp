#pragma once

// Per-antenna OFDM / DFT-s-OFDM synthesis and oversampled PAPR statistics.

#include <cstdint>
#include <utility>
#include <vector>

#include "sgrass/grassmann.hpp"
#include "sgrass/linalg.hpp"
#include "sgrass/random.hpp"

namespace sgrass {

enum class Modulation { Qam4, Qpsk };
enum class Waveform { Ofdm, DftsOfdm };

struct WaveformConfig {
  int subcarriers = 624;
  int fft_size = 1024;
  int oversampling = 8;
  Modulation modulation = Modulation::Qam4;
  Waveform waveform = Waveform::DftsOfdm;

  /// Throws ConfigError.
  void validate() const;
  int output_length() const { return fft_size * oversampling; }
};

/// Unit-power Gray-mapped symbols. 4-QAM is {+-1 +-j}/sqrt(2); QPSK is
/// {1, j, -1, -j}.
CVector modulate(std::size_t count, Modulation modulation, Rng& rng);
CVector modulate(std::size_t count, Modulation modulation, std::uint64_t seed);

/// Unitary DFT of one stream block.
CVector dft_spread(const CVector& symbols);

/// W * streams with the same W on every subcarrier. Throws DimensionMismatch.
CMatrix precode_grid(const CMatrix& w, const CMatrix& streams);

/// Localized DC-centered mapping: used subcarrier k sits at frequency offset
/// k - floor(K_u/2). The spectrum is zero-padded to Q*N_fft and passed
/// through a unitary inverse FFT. Throws ConfigError.
CVector to_time_domain(const CVector& row, const WaveformConfig& cfg);

/// Throws ZeroSignal for an all-zero input.
double papr(const CVector& x);

double to_db(double linear);

struct PaprSamples {
  std::vector<double> values;  // linear
  WaveformConfig config;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Empirical Pr(PAPR > threshold) for each threshold in dB.
std::vector<std::pair<double, double>> ccdf(const PaprSamples& samples,
                                            const std::vector<double>& thresholds_db);

/// Smallest sample x (in dB) with Pr(PAPR > x) <= probability.
double ccdf_threshold_db(const PaprSamples& samples, double probability);

/// Row t carries ell nonzeros at stream columns (t + i) mod M, i < ell, each
/// sqrt(M/(ell T)) * exp(j thetas[i]). With thetas empty, phases are drawn
/// uniformly in [-pi, pi) per row from the seed. Throws InvalidEll.
CMatrix row_sparse_precoder(int T, int M, int ell, const std::vector<double>& thetas,
                            std::uint64_t seed);

struct RowSparseSpec {
  int T = 8;
  int M = 4;
  int ell = 1;
  std::vector<double> thetas;  // empty: random per frame
};

enum class Selection { Random, Channel };

struct PaprOptions {
  bool antenna_mean = false;  // one sample per frame: mean linear PAPR over antennas
  Selection selection = Selection::Random;
  int receive_antennas = 1;  // Channel selection only
};

/// Frame f draws streams from (seed, Symbols, f) and the precoder choice from
/// (seed, Precoder, f). Antennas with an all-zero signal are skipped. Throws
/// ConfigError for trials = 0.
PaprSamples papr_experiment(const Codebook& book, const WaveformConfig& cfg, std::size_t trials,
                            std::uint64_t seed, const PaprOptions& options = {});
PaprSamples papr_experiment(const RowSparseSpec& spec, const WaveformConfig& cfg,
                            std::size_t trials, std::uint64_t seed,
                            const PaprOptions& options = {});

/// Stream symbols of one frame, M x K_u, DFT-spread for DFT-s-OFDM.
CMatrix frame_streams(int M, const WaveformConfig& cfg, std::uint64_t seed, std::uint64_t frame);

/// Time-domain signal of every antenna for precoder w and one frame of streams.
std::vector<CVector> antenna_signals(const CMatrix& w, const CMatrix& streams,
                                     const WaveformConfig& cfg);

}  // namespace sgrass
