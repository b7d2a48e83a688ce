#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "error_code.hpp"
#include "oracles.hpp"
#include "sgrass/forge.hpp"
#include "sgrass/wavesim.hpp"

using namespace sgrass;

namespace {

WaveformConfig small_config(Waveform wf, int q = 4) {
  WaveformConfig cfg;
  cfg.subcarriers = 96;
  cfg.fft_size = 128;
  cfg.oversampling = q;
  cfg.waveform = wf;
  return cfg;
}

PaprSamples constant_samples(double value, std::size_t n) {
  PaprSamples s;
  s.values.assign(n, value);
  return s;
}

}  // namespace

TEST(Modulate, PowerAlphabetDeterminism) {
  const CVector s = modulate(100000, Modulation::Qam4, 1);
  EXPECT_NEAR(s.squaredNorm() / s.size(), 1.0, 1e-12);  // constant modulus
  const double h = 1.0 / std::sqrt(2.0);
  std::set<std::pair<double, double>> seen;
  for (Eigen::Index i = 0; i < s.size(); ++i) seen.insert({s(i).real(), s(i).imag()});
  EXPECT_EQ(seen, (std::set<std::pair<double, double>>{{h, h}, {h, -h}, {-h, h}, {-h, -h}}));
  EXPECT_EQ(modulate(64, Modulation::Qam4, 9), modulate(64, Modulation::Qam4, 9));
  EXPECT_NE(modulate(64, Modulation::Qam4, 9), modulate(64, Modulation::Qam4, 10));

  const CVector q = modulate(1000, Modulation::Qpsk, 2);
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    EXPECT_TRUE(q(i) == cdouble(1, 0) || q(i) == cdouble(0, 1) || q(i) == cdouble(-1, 0) ||
                q(i) == cdouble(0, -1));
  }
}

TEST(Modulate, SymbolsAreUniform) {
  const CVector s = modulate(100000, Modulation::Qam4, 3);
  int upper_right = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) upper_right += s(i).real() > 0 && s(i).imag() > 0;
  EXPECT_NEAR(upper_right / 100000.0, 0.25, 0.01);
}

TEST(DftSpread, OnesAndParseval) {
  const CVector y = dft_spread(CVector::Ones(4));
  EXPECT_NEAR(std::abs(y(0) - cdouble(2.0)), 0.0, 1e-15);
  const CVector s = modulate(624, Modulation::Qam4, 4);
  EXPECT_NEAR(dft_spread(s).norm(), s.norm(), 1e-10);
}

TEST(DftSpread, SingleCarrierHasUnitPaprAtNyquist) {
  WaveformConfig cfg;
  cfg.subcarriers = 256;
  cfg.fft_size = 256;
  cfg.oversampling = 1;
  const CVector s = modulate(256, Modulation::Qam4, 5);
  const CVector x = to_time_domain(dft_spread(s), cfg);
  EXPECT_NEAR(papr(x), 1.0, 1e-9);
}

TEST(PrecodeGrid, IdentityAndStructure) {
  std::mt19937_64 rng(1);
  const CMatrix streams = oracle::random_gaussian(2, 10, rng);
  const CMatrix grid = precode_grid(identity_columns(4, 2), streams);
  EXPECT_EQ(grid.topRows(2), streams);
  EXPECT_TRUE(grid.bottomRows(2).isZero(0.0));

  const CMatrix w = row_sparse_precoder(4, 2, 1, {0.3, 0.0}, 0);
  const CMatrix g = precode_grid(w, streams);
  for (int t = 0; t < 4; ++t) {
    const CMatrix rotated = w(t, t % 2) * streams.row(t % 2);
    EXPECT_LT((g.row(t) - rotated).norm(), 1e-15);
  }
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(g.col(k).norm(), (w * streams.col(k)).norm(), 1e-12);
  }
  EXPECT_EQ(code_of([&] { precode_grid(identity_columns(4, 3), streams); }),
            ErrorCode::DimensionMismatch);
}

TEST(TimeDomain, ToneTwoTonesAndZero) {
  WaveformConfig cfg = small_config(Waveform::Ofdm, 4);
  CVector row = CVector::Zero(cfg.subcarriers);
  row(17) = cdouble(0.6, -0.8);
  EXPECT_NEAR(papr(to_time_domain(row, cfg)), 1.0, 1e-9);
  row(18) = cdouble(0.6, -0.8);
  EXPECT_NEAR(papr(to_time_domain(row, cfg)), 2.0, 1e-6);
  EXPECT_TRUE(to_time_domain(CVector::Zero(cfg.subcarriers), cfg).isZero(0.0));
  EXPECT_EQ(to_time_domain(row, cfg).size(), 512);
}

TEST(TimeDomain, ParsevalAndConfigErrors) {
  WaveformConfig cfg = small_config(Waveform::Ofdm, 8);
  const CVector row = modulate(96, Modulation::Qam4, 6);
  EXPECT_NEAR(to_time_domain(row, cfg).norm(), row.norm(), 1e-10);
  EXPECT_EQ(code_of([&] { to_time_domain(CVector::Ones(5), cfg); }), ErrorCode::ConfigError);
  cfg.fft_size = 64;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
  cfg = small_config(Waveform::Ofdm, 3);
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
}

TEST(Papr, Examples) {
  EXPECT_EQ(papr(CVector::Constant(8, cdouble(0, 2))), 1.0);
  CVector x = CVector::Zero(4);
  x(0) = 2.0;
  EXPECT_EQ(papr(x), 4.0);
  EXPECT_NEAR(papr(modulate(64, Modulation::Qam4, 7)), 1.0, 1e-12);
  EXPECT_EQ(code_of([] { papr(CVector::Zero(4)); }), ErrorCode::ZeroSignal);
}

TEST(Ccdf, Examples) {
  const auto s = constant_samples(2.0, 10);
  const auto c = ccdf(s, {-1.0, 3.0, 3.02});
  EXPECT_EQ(c[0].second, 1.0);
  EXPECT_EQ(c[1].second, 1.0);
  EXPECT_EQ(c[2].second, 0.0);
  EXPECT_NEAR(ccdf_threshold_db(s, 0.01), 10 * std::log10(2.0), 1e-12);
}

TEST(Ccdf, MonotoneAndThresholdConsistent) {
  WaveformConfig cfg = small_config(Waveform::Ofdm);
  const auto s = papr_experiment(proposed_codebook_4_2(), cfg, 200, 1);
  std::vector<double> th;
  for (double t = 0.0; t <= 14.0; t += 0.1) th.push_back(t);
  const auto c = ccdf(s, th);
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LE(c[i].second, c[i - 1].second);
  const double x = ccdf_threshold_db(s, 0.05);
  EXPECT_LE(ccdf(s, {x})[0].second, 0.05);
  EXPECT_GT(ccdf(s, {x - 1e-9})[0].second, 0.05 - 1.0 / s.values.size());
}

TEST(RowSparse, MagnitudesAndErrors) {
  const std::vector<double> thetas{1.91, -2.21, -1.71, 0.636};
  for (int ell = 1; ell <= 4; ++ell) {
    const CMatrix w = row_sparse_precoder(8, 4, ell, thetas, 0);
    const double mag = std::sqrt(4.0 / (ell * 8.0));
    for (int t = 0; t < 8; ++t) {
      int nz = 0;
      for (int c = 0; c < 4; ++c) {
        if (w(t, c) != cdouble(0.0)) {
          ++nz;
          EXPECT_NEAR(std::abs(w(t, c)), mag, 1e-15);
        }
      }
      EXPECT_EQ(nz, ell);
      EXPECT_NEAR(std::arg(w(t, t % 4)), thetas[0], 1e-12);
    }
  }
  EXPECT_EQ(code_of([] { row_sparse_precoder(8, 4, 0, {}, 0); }), ErrorCode::InvalidEll);
  EXPECT_EQ(code_of([] { row_sparse_precoder(8, 4, 5, {}, 0); }), ErrorCode::InvalidEll);
}

TEST(PaprExperiment, ZeroTrialsAndDeterminism) {
  const WaveformConfig cfg = small_config(Waveform::DftsOfdm);
  EXPECT_EQ(code_of([&] { papr_experiment(proposed_codebook_4_2(), cfg, 0, 1); }),
            ErrorCode::ConfigError);
  const auto a = papr_experiment(nr_codebook_4_2(), cfg, 50, 4);
  const auto b = papr_experiment(nr_codebook_4_2(), cfg, 50, 4);
  EXPECT_EQ(a.values, b.values);
  for (double v : a.values) EXPECT_GE(v, 1.0);
  PaprOptions mean;
  mean.antenna_mean = true;
  EXPECT_EQ(papr_experiment(nr_codebook_4_2(), cfg, 50, 4, mean).values.size(), 50u);
  PaprOptions channel;
  channel.selection = Selection::Channel;
  channel.receive_antennas = 2;
  EXPECT_FALSE(papr_experiment(nr_codebook_4_2(), cfg, 20, 4, channel).values.empty());
}

TEST(PaprExperiment, SilentAntennasSkipped) {
  const WaveformConfig cfg = small_config(Waveform::Ofdm);
  const Codebook first = make_codebook({proposed_codebook_4_2()[0]});
  EXPECT_EQ(papr_experiment(first, cfg, 10, 1).values.size(), 20u);
}

TEST(PaprExperiment, OversamplingNeverLowersPeak) {
  for (Waveform wf : {Waveform::Ofdm, Waveform::DftsOfdm}) {
    const WaveformConfig q8 = small_config(wf, 8);
    const WaveformConfig q1 = small_config(wf, 1);
    const CMatrix w = row_sparse_precoder(8, 4, 2, {}, 3);
    for (std::uint64_t f = 0; f < 30; ++f) {
      const CMatrix streams = frame_streams(4, q8, 2, f);
      const auto hi = antenna_signals(w, streams, q8);
      const auto lo = antenna_signals(w, streams, q1);
      for (std::size_t t = 0; t < hi.size(); ++t) EXPECT_GE(papr(hi[t]), papr(lo[t]) - 1e-9);
    }
  }
}

TEST(PaprExperiment, OfdmSamplesLookGaussian) {
  WaveformConfig cfg;
  cfg.subcarriers = 512;
  cfg.fft_size = 512;
  cfg.oversampling = 1;
  cfg.waveform = Waveform::Ofdm;
  for (int ell : {1, 4}) {
    const CMatrix w = row_sparse_precoder(8, 4, ell, {1.91, -2.21, -1.71, 0.636}, 0);
    std::vector<double> re;
    for (std::uint64_t f = 0; re.size() < 100000; ++f) {
      const auto x = antenna_signals(w, frame_streams(4, cfg, 8, f), cfg)[0];
      for (Eigen::Index n = 0; n < x.size(); ++n) re.push_back(x(n).real());
    }
    EXPECT_NEAR(oracle::kurtosis(re), 3.0, 0.2) << "ell " << ell;
  }
}

TEST(PaprExperiment, EllOneMatchesUnprecodedSingleCarrier) {
  WaveformConfig cfg = small_config(Waveform::DftsOfdm, 4);
  const std::vector<double> thetas{1.91, -2.21, -1.71, 0.636};
  const auto sparse = papr_experiment(RowSparseSpec{8, 4, 1, thetas}, cfg, 400, 11);
  const auto single = papr_experiment(RowSparseSpec{1, 1, 1, {0.0}}, cfg, 3200, 12);
  EXPECT_EQ(sparse.values.size(), 3200u);
  EXPECT_GT(oracle::ks_two_sample_pvalue(sparse.values, single.values), 0.01);
}
