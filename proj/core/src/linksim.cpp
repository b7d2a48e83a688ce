#include "sgrass/linksim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sgrass/error.hpp"
#include "sgrass/parallel.hpp"

namespace sgrass {
namespace {

constexpr std::size_t kTrialsPerChunk = 512;
constexpr double kTieTolerance = 1e-12;

std::size_t chunk_count(std::size_t trials) {
  return (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
}

std::size_t argmax_smallest(const std::vector<double>& values) {
  const double best = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= best - kTieTolerance) return i;
  }
  return 0;
}

void check_book(const CMatrix& H, const Codebook& book) {
  if (book.size() == 0) fail(ErrorCode::TooFewCodewords, "codebook is empty");
  if (H.cols() != book.T) fail(ErrorCode::DimensionMismatch, "channel columns != T");
}

std::vector<double> gram_eigenvalues(const CMatrix& gram) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double rate_from_eigenvalues(const std::vector<double>& ev, double scale) {
  double r = 0.0;
  for (double v : ev) r += std::log2(1.0 + scale * std::max(v, 0.0));
  return r;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ChannelRealization sample_rayleigh(int N, int T, Rng& rng) {
  if (N < 1 || T < 1) fail(ErrorCode::DimensionMismatch, "channel dimensions must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ChannelRealization ch{N, T, CMatrix(N, T), ChannelModel::Rayleigh, 0.0};
  for (int c = 0; c < T; ++c) {
    for (int r = 0; r < N; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      ch.H(r, c) = {re, im};
    }
  }
  return ch;
}

ChannelRealization sample_rayleigh(int N, int T, std::uint64_t seed, std::uint64_t index) {
  Rng rng = substream(seed, Stream::Channel, index);
  return sample_rayleigh(N, T, rng);
}

CVector ula_steering(int size, double phi) {
  CVector a(size);
  const double step = std::numbers::pi * std::sin(phi);
  for (int n = 0; n < size; ++n) a(n) = std::polar(1.0, step * n);
  return a;
}

ChannelRealization sample_rician(int N, int T, double K, std::uint64_t seed, bool normalize,
                                 std::uint64_t index) {
  if (std::isnan(K) || K < 0.0) fail(ErrorCode::InvalidK, "K must be >= 0 or infinite");
  ChannelRealization ch;
  const bool pure_los = std::isinf(K);
  if (pure_los) {
    ch = {N, T, CMatrix::Zero(N, T), ChannelModel::Rician, K};
  } else {
    ch = sample_rayleigh(N, T, seed, index);
    ch.model = ChannelModel::Rician;
    ch.K = K;
    ch.H *= std::sqrt(1.0 / (K + 1.0));
  }
  if (K > 0.0) {
    Rng rng = substream(seed, Stream::Angles, index);
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);
    const double phi_r = angle(rng);
    const double phi_t = angle(rng);
    const CMatrix los = ula_steering(N, phi_r) * ula_steering(T, phi_t).adjoint();
    const double w = pure_los ? 1.0 : std::sqrt(K / (K + 1.0));
    ch.H += w * los;
  }
  if (normalize) ch.H /= std::sqrt(static_cast<double>(N) * T);
  return ch;
}

bool is_row_sparse(const CMatrix& w, double tol) {
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    int nonzeros = 0;
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      if (std::abs(w(r, c)) > tol) ++nonzeros;
    }
    if (nonzeros > 1) return false;
  }
  return true;
}

Ellpack to_ellpack(const CMatrix& w) {
  Ellpack e{static_cast<int>(w.rows()), static_cast<int>(w.cols()), {}, {}};
  e.values.reserve(w.rows());
  e.columns.reserve(w.rows());
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    int column = 0;
    cdouble value = 0.0;
    int nonzeros = 0;
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      if (w(r, c) != cdouble(0.0)) {
        column = static_cast<int>(c);
        value = w(r, c);
        ++nonzeros;
      }
    }
    if (nonzeros > 1) {
      fail(ErrorCode::ShapeMismatch, "row " + std::to_string(r) + " has more than one nonzero");
    }
    e.values.push_back(value);
    e.columns.push_back(column);
  }
  return e;
}

namespace {

// Upper triangle plus mirror would halve the work; the count follows the
// full N M^2 product so it matches the closed form.
CMatrix gram_of(const CMatrix& hw, MultTrace* trace) {
  const Eigen::Index n = hw.rows();
  const Eigen::Index m = hw.cols();
  CMatrix g(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      cdouble acc = 0.0;
      for (Eigen::Index r = 0; r < n; ++r) acc += std::conj(hw(r, a)) * hw(r, b);
      g(a, b) = acc;
    }
  }
  if (trace) trace->add(static_cast<std::uint64_t>(n * m * m));
  return g;
}

}  // namespace

CMatrix gram_matrix(const CMatrix& H, const CMatrix& w, MultTrace* trace) {
  if (H.cols() != w.rows()) fail(ErrorCode::DimensionMismatch, "H columns != W rows");
  const Eigen::Index n = H.rows();
  const Eigen::Index t = H.cols();
  const Eigen::Index m = w.cols();
  CMatrix hw = CMatrix::Zero(n, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index k = 0; k < t; ++k) {
      const cdouble wk = w(k, c);
      for (Eigen::Index r = 0; r < n; ++r) hw(r, c) += H(r, k) * wk;
    }
  }
  if (trace) trace->add(static_cast<std::uint64_t>(n * t * m));
  return gram_of(hw, trace);
}

CMatrix gram_matrix(const CMatrix& H, const Ellpack& w, MultTrace* trace) {
  if (H.cols() != w.T) fail(ErrorCode::DimensionMismatch, "H columns != W rows");
  const Eigen::Index n = H.rows();
  CMatrix hw = CMatrix::Zero(n, w.M);
  for (int k = 0; k < w.T; ++k) {
    const cdouble wk = w.values[k];
    const int c = w.columns[k];
    for (Eigen::Index r = 0; r < n; ++r) hw(r, c) += H(r, k) * wk;
  }
  if (trace) trace->add(static_cast<std::uint64_t>(n * w.T));
  return gram_of(hw, trace);
}

double rate_from_gram(const CMatrix& gram, double rho) {
  if (rho < 0.0) fail(ErrorCode::InvalidRange, "rho must be >= 0");
  return rate_from_eigenvalues(gram_eigenvalues(gram), rho / static_cast<double>(gram.rows()));
}

double achievable_rate(const CMatrix& H, const Codeword& w, double rho) {
  if (H.cols() != w.T()) fail(ErrorCode::DimensionMismatch, "H columns != T");
  const CMatrix hw = H * w.matrix();
  return rate_from_gram(hw.adjoint() * hw, rho);
}

double effective_gain(const CMatrix& H, const Codeword& w) {
  if (H.cols() != w.T()) fail(ErrorCode::DimensionMismatch, "H columns != T");
  return (H * w.matrix()).squaredNorm();
}

std::size_t select_index(const CMatrix& H, const Codebook& book, double rho) {
  check_book(H, book);
  std::vector<double> rates(book.size());
  for (std::size_t i = 0; i < book.size(); ++i) rates[i] = achievable_rate(H, book[i], rho);
  return argmax_smallest(rates);
}

std::size_t select_index_gain(const CMatrix& H, const Codebook& book) {
  check_book(H, book);
  std::vector<double> gains(book.size());
  for (std::size_t i = 0; i < book.size(); ++i) gains[i] = effective_gain(H, book[i]);
  return argmax_smallest(gains);
}

const PairedDifference& RateResult::difference(std::size_t a, std::size_t b) const {
  for (const auto& d : differences) {
    if (d.a == a && d.b == b) return d;
  }
  fail(ErrorCode::InvalidRange, "no paired difference for the requested codebooks");
}

RateResult rate_curve(const std::vector<Codebook>& books, int N, const std::vector<double>& snr_db,
                      std::size_t trials, std::uint64_t seed) {
  if (trials == 0) fail(ErrorCode::ConfigError, "trials must be >= 1");
  if (books.empty()) fail(ErrorCode::TooFewCodewords, "no codebooks given");
  const int T = books.front().T;
  for (const auto& b : books) {
    if (b.T != T) fail(ErrorCode::DimensionMismatch, "codebooks must share T");
    if (b.size() == 0) fail(ErrorCode::TooFewCodewords, "codebook is empty");
  }
  const std::size_t nb = books.size();
  const std::size_t ns = snr_db.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = a + 1; b < nb; ++b) pairs.emplace_back(a, b);
  }

  struct Partial {
    std::vector<double> sum;   // [book * ns + s]
    std::vector<double> dsum;  // [pair * ns + s]
    std::vector<double> dsq;
  };
  const std::size_t chunks = chunk_count(trials);
  std::vector<Partial> partial(chunks);
  parallel_chunks(chunks, [&](std::size_t chunk) {
    Partial p{std::vector<double>(nb * ns, 0.0), std::vector<double>(pairs.size() * ns, 0.0),
              std::vector<double>(pairs.size() * ns, 0.0)};
    std::vector<double> best(nb * ns);
    const std::size_t begin = chunk * kTrialsPerChunk;
    const std::size_t end = std::min(trials, begin + kTrialsPerChunk);
    for (std::size_t t = begin; t < end; ++t) {
      const CMatrix H = sample_rayleigh(N, T, seed, t).H;
      const CMatrix A = H.adjoint() * H;
      for (std::size_t b = 0; b < nb; ++b) {
        const double scale_per_rho = 1.0 / books[b].M;
        for (std::size_t s = 0; s < ns; ++s) best[b * ns + s] = 0.0;
        for (const auto& w : books[b].codewords) {
          const CMatrix g = w.matrix().adjoint() * A * w.matrix();
          const auto ev = gram_eigenvalues(g);
          for (std::size_t s = 0; s < ns; ++s) {
            const double r = rate_from_eigenvalues(ev, db_to_linear(snr_db[s]) * scale_per_rho);
            best[b * ns + s] = std::max(best[b * ns + s], r);
          }
        }
        for (std::size_t s = 0; s < ns; ++s) p.sum[b * ns + s] += best[b * ns + s];
      }
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        for (std::size_t s = 0; s < ns; ++s) {
          const double d = best[pairs[k].first * ns + s] - best[pairs[k].second * ns + s];
          p.dsum[k * ns + s] += d;
          p.dsq[k * ns + s] += d * d;
        }
      }
    }
    partial[chunk] = std::move(p);
  });

  std::vector<double> sum(nb * ns, 0.0), dsum(pairs.size() * ns, 0.0),
      dsq(pairs.size() * ns, 0.0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p.sum[i];
    for (std::size_t i = 0; i < dsum.size(); ++i) {
      dsum[i] += p.dsum[i];
      dsq[i] += p.dsq[i];
    }
  }

  const double n = static_cast<double>(trials);
  RateResult result;
  result.snr_db = snr_db;
  result.trials = trials;
  result.seed = seed;
  result.mean_rate.assign(nb, std::vector<double>(ns));
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t s = 0; s < ns; ++s) result.mean_rate[b][s] = sum[b * ns + s] / n;
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    PairedDifference d{pairs[k].first, pairs[k].second, std::vector<double>(ns),
                       std::vector<double>(ns)};
    for (std::size_t s = 0; s < ns; ++s) {
      const double mean = dsum[k * ns + s] / n;
      const double var =
          trials > 1 ? std::max(0.0, (dsq[k * ns + s] - n * mean * mean) / (n - 1.0)) : 0.0;
      d.mean[s] = mean;
      d.standard_error[s] = std::sqrt(var / n);
    }
    result.differences.push_back(std::move(d));
  }
  return result;
}

std::vector<std::vector<double>> gain_samples(const std::vector<Codebook>& books, int N, double K,
                                              std::size_t trials, std::uint64_t seed) {
  if (trials == 0) fail(ErrorCode::ConfigError, "trials must be >= 1");
  if (books.empty()) fail(ErrorCode::TooFewCodewords, "no codebooks given");
  const int T = books.front().T;
  for (const auto& b : books) {
    if (b.T != T) fail(ErrorCode::DimensionMismatch, "codebooks must share T");
    if (b.size() == 0) fail(ErrorCode::TooFewCodewords, "codebook is empty");
  }
  std::vector<std::vector<double>> out(books.size(), std::vector<double>(trials));
  parallel_chunks(chunk_count(trials), [&](std::size_t chunk) {
    const std::size_t begin = chunk * kTrialsPerChunk;
    const std::size_t end = std::min(trials, begin + kTrialsPerChunk);
    for (std::size_t t = begin; t < end; ++t) {
      const CMatrix H = sample_rician(N, T, K, seed, true, t).H;
      const CMatrix A = H.adjoint() * H;
      for (std::size_t b = 0; b < books.size(); ++b) {
        double best = 0.0;
        for (const auto& w : books[b].codewords) {
          const double g = (w.matrix().adjoint() * A * w.matrix()).trace().real();
          best = std::max(best, g);
        }
        out[b][t] = best;
      }
    }
  });
  return out;
}

std::vector<double> gain_cdf(const Codebook& book, int N, double K, std::size_t trials,
                             std::uint64_t seed) {
  auto samples = std::move(gain_samples({book}, N, K, trials, seed).front());
  std::sort(samples.begin(), samples.end());
  return samples;
}

double median(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::InvalidRange, "median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace sgrass
