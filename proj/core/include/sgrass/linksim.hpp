#pragma once

// Limited-feedback link simulation: channel draws, rate and gain metrics,
// codeword selection, and paired Monte Carlo curves.

#include <cstdint>
#include <limits>
#include <vector>

#include "sgrass/audit.hpp"
#include "sgrass/grassmann.hpp"
#include "sgrass/linalg.hpp"
#include "sgrass/random.hpp"

namespace sgrass {

enum class ChannelModel { Rayleigh, Rician };

inline constexpr double kInfiniteK = std::numeric_limits<double>::infinity();

struct ChannelRealization {
  int N = 0;
  int T = 0;
  CMatrix H;
  ChannelModel model = ChannelModel::Rayleigh;
  double K = 0.0;
};

/// i.i.d. CN(0, 1) entries.
ChannelRealization sample_rayleigh(int N, int T, Rng& rng);
ChannelRealization sample_rayleigh(int N, int T, std::uint64_t seed, std::uint64_t index = 0);

/// sqrt(K/(K+1)) a_r a_t^H + sqrt(1/(K+1)) H_nlos with half-wavelength ULA
/// steering vectors at angles uniform in [-pi/2, pi/2). K = kInfiniteK gives
/// the pure LoS term. normalize divides by sqrt(N T). Throws InvalidK for
/// negative or NaN K.
ChannelRealization sample_rician(int N, int T, double K, std::uint64_t seed, bool normalize,
                                 std::uint64_t index = 0);

/// Unit-modulus steering vector exp(j pi n sin(phi)), n = 0..size-1.
CVector ula_steering(int size, double phi);

/// One (value, column) record per row. Rows with no nonzero store value 0.
struct Ellpack {
  int T = 0;
  int M = 0;
  std::vector<cdouble> values;
  std::vector<int> columns;
};

/// Throws ShapeMismatch when a row holds more than one nonzero.
Ellpack to_ellpack(const CMatrix& w);
bool is_row_sparse(const CMatrix& w, double tol = 0.0);

/// (H W)^H (H W), counting complex multiplies into trace.
CMatrix gram_matrix(const CMatrix& H, const CMatrix& w, MultTrace* trace = nullptr);
CMatrix gram_matrix(const CMatrix& H, const Ellpack& w, MultTrace* trace = nullptr);

/// log2 det(I + (rho/M) W^H H^H H W) from the eigenvalues of the Gram matrix.
/// Throws DimensionMismatch.
double achievable_rate(const CMatrix& H, const Codeword& w, double rho);
double rate_from_gram(const CMatrix& gram, double rho);

/// ||H W||_F^2.
double effective_gain(const CMatrix& H, const Codeword& w);

/// 0-based index of the smallest codeword within 1e-12 of the best value.
std::size_t select_index(const CMatrix& H, const Codebook& book, double rho);
std::size_t select_index_gain(const CMatrix& H, const Codebook& book);

struct PairedDifference {
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<double> mean;            // per SNR, mean of rate(a) - rate(b)
  std::vector<double> standard_error;  // per SNR
};

struct RateResult {
  std::vector<double> snr_db;
  std::vector<std::vector<double>> mean_rate;  // [codebook][snr]
  std::vector<PairedDifference> differences;   // every pair a < b
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool paired = true;

  const PairedDifference& difference(std::size_t a, std::size_t b) const;
};

/// Rayleigh channels shared by every codebook (common random numbers).
/// Trial t uses substream (seed, Channel, t); results do not depend on the
/// worker count. Throws ConfigError for trials = 0.
RateResult rate_curve(const std::vector<Codebook>& books, int N, const std::vector<double>& snr_db,
                      std::size_t trials, std::uint64_t seed);

/// Per-trial selected gain for each codebook, trial order, normalized Rician
/// channels shared across codebooks.
std::vector<std::vector<double>> gain_samples(const std::vector<Codebook>& books, int N, double K,
                                              std::size_t trials, std::uint64_t seed);

/// Sorted selected-gain samples of one codebook.
std::vector<double> gain_cdf(const Codebook& book, int N, double K, std::size_t trials,
                             std::uint64_t seed);

/// Median of an unsorted sample.
double median(std::vector<double> values);

double db_to_linear(double db);

}  // namespace sgrass
