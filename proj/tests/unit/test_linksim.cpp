#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "error_code.hpp"
#include "oracles.hpp"
#include "sgrass/forge.hpp"
#include "sgrass/linksim.hpp"

using namespace sgrass;

namespace {

Codebook e12_e34() {
  CMatrix a = CMatrix::Zero(4, 2), b = CMatrix::Zero(4, 2);
  a(0, 0) = a(1, 1) = 1.0;
  b(2, 0) = b(3, 1) = 1.0;
  return make_codebook({Codeword(a), Codeword(b)});
}

}  // namespace

TEST(Rayleigh, MomentsAndDeterminism) {
  double power = 0.0;
  cdouble mean = 0.0;
  const int draws = 25000;  // 4 entries each: 10^5 samples
  for (int i = 0; i < draws; ++i) {
    const CMatrix H = sample_rayleigh(2, 2, 5, static_cast<std::uint64_t>(i)).H;
    power += H.squaredNorm();
    mean += H.sum();
  }
  const double n = 4.0 * draws;
  EXPECT_NEAR(power / n, 1.0, 0.02);
  EXPECT_LT(std::abs(mean / n), 3.0 * std::sqrt(2.0 / n));
  EXPECT_EQ(sample_rayleigh(3, 4, 9).H, sample_rayleigh(3, 4, 9).H);
  EXPECT_NE(sample_rayleigh(3, 4, 9).H, sample_rayleigh(3, 4, 10).H);
}

TEST(Rician, KZeroMatchesRayleigh) {
  std::vector<double> a, b;
  for (int i = 0; i < 2500; ++i) {
    const CMatrix r = sample_rician(2, 2, 0.0, 1, false, static_cast<std::uint64_t>(i)).H;
    const CMatrix g = sample_rayleigh(2, 2, 2, static_cast<std::uint64_t>(i)).H;
    for (int k = 0; k < 4; ++k) {
      a.push_back(std::abs(r(k)));
      b.push_back(std::abs(g(k)));
    }
  }
  EXPECT_GT(oracle::ks_two_sample_pvalue(a, b), 0.01);
}

TEST(Rician, PureLosIsRankOne) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const CMatrix H = sample_rician(8, 4, kInfiniteK, 3, false, i).H;
    Eigen::JacobiSVD<CMatrix> svd(H);
    EXPECT_LT(svd.singularValues()(1), 1e-10 * svd.singularValues()(0));
    EXPECT_NEAR(H.squaredNorm(), 32.0, 1e-9);
  }
}

TEST(Rician, PowerBookkeeping) {
  double power = 0.0;
  const int draws = 25000;
  for (int i = 0; i < draws; ++i) {
    power += sample_rician(2, 2, 1.0, 4, false, static_cast<std::uint64_t>(i)).H.squaredNorm();
  }
  EXPECT_NEAR(power / (4.0 * draws), 1.0, 0.02);

  double normalized = 0.0;
  for (int i = 0; i < 10000; ++i) {
    normalized += sample_rician(4, 4, 1.0, 4, true, static_cast<std::uint64_t>(i)).H.squaredNorm();
  }
  EXPECT_NEAR(normalized / 10000, 1.0, 0.03);
}

TEST(Rician, InvalidK) {
  EXPECT_EQ(code_of([] { sample_rician(2, 2, -1.0, 0, false); }), ErrorCode::InvalidK);
  EXPECT_EQ(code_of([] { sample_rician(2, 2, std::nan(""), 0, false); }), ErrorCode::InvalidK);
}

TEST(Rate, Examples) {
  const Codeword w(proposed_codebook_4_2()[8]);
  EXPECT_NEAR(achievable_rate(CMatrix::Identity(4, 4), w, 2.0), 2.0, 1e-12);
  EXPECT_EQ(achievable_rate(CMatrix::Zero(4, 4), w, 2.0), 0.0);
  EXPECT_EQ(code_of([&] { achievable_rate(CMatrix::Identity(3, 3), w, 1.0); }),
            ErrorCode::DimensionMismatch);
}

TEST(Rate, MatchesDeterminantOracle) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix H = oracle::random_gaussian(4, 4, rng);
    const Codeword w(oracle::random_stiefel(4, 2, rng));
    const double rho = 0.1 + trial;
    EXPECT_NEAR(achievable_rate(H, w, rho), oracle::determinant_rate(H, w.matrix(), rho), 1e-10);
  }
}

TEST(Rate, MonotoneInRhoAndSubspaceInvariant) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix H = oracle::random_gaussian(3, 6, rng);
    const Codeword w(oracle::random_stiefel(6, 3, rng));
    const Codeword wu(w.matrix() * oracle::random_stiefel(3, 3, rng));
    double last = 0.0;
    for (double rho : {0.0, 0.5, 1.0, 10.0, 100.0}) {
      const double r = achievable_rate(H, w, rho);
      EXPECT_GE(r, last);
      EXPECT_NEAR(r, achievable_rate(H, wu, rho), 1e-9);
      last = r;
    }
  }
}

TEST(Select, Examples) {
  const Codebook b = e12_e34();
  CMatrix H = CMatrix::Identity(4, 4);
  H.col(2).setZero();
  H.col(3).setZero();
  EXPECT_EQ(select_index(H, b, 10.0), 0u);
  EXPECT_EQ(select_index(CMatrix::Zero(4, 4), b, 10.0), 0u);
  H = CMatrix::Zero(4, 4);
  H.diagonal() << 2, 2, 1, 1;
  EXPECT_EQ(select_index_gain(H, b), 0u);
  EXPECT_EQ(select_index_gain(CMatrix::Zero(4, 4), b), 0u);
  // Swapped strengths pick the second codeword.
  H.diagonal() << 1, 1, 2, 2;
  EXPECT_EQ(select_index(H, b, 1.0), 1u);
}

TEST(Select, AttainsMaximumEveryTrial) {
  const Codebook nr = nr_codebook_4_2();
  for (std::uint64_t t = 0; t < 200; ++t) {
    const CMatrix H = sample_rayleigh(4, 4, 7, t).H;
    const auto i = select_index(H, nr, 10.0);
    const double best = achievable_rate(H, nr[i], 10.0);
    for (std::size_t k = 0; k < nr.size(); ++k) {
      EXPECT_GE(best + 1e-12, achievable_rate(H, nr[k], 10.0));
      if (k < i) EXPECT_LT(achievable_rate(H, nr[k], 10.0), best - 1e-12);
    }
  }
}

TEST(Select, RankOneGainFactorizes) {
  const Codebook p = proposed_codebook_4_2();
  for (std::uint64_t t = 0; t < 50; ++t) {
    const CMatrix H = sample_rician(4, 4, kInfiniteK, 11, false, t).H;
    Eigen::JacobiSVD<CMatrix> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CVector ar = svd.matrixU().col(0) * svd.singularValues()(0);
    const CVector at = svd.matrixV().col(0);
    double best = 0.0;
    for (const auto& w : p.codewords) {
      best = std::max(best, (at.adjoint() * w.matrix()).squaredNorm() * ar.squaredNorm());
    }
    EXPECT_NEAR(effective_gain(H, p[select_index_gain(H, p)]), best, 1e-9);
  }
}

TEST(Ellpack, Layout) {
  const auto e = to_ellpack(proposed_codebook_4_2()[0].matrix());
  ASSERT_EQ(e.values.size(), 4u);
  EXPECT_EQ(e.values[2], cdouble(0.0));
  EXPECT_EQ(e.columns[1], 1);
  EXPECT_EQ(code_of([] { to_ellpack(nr_codebook_4_2()[20].matrix()); }), ErrorCode::ShapeMismatch);
  EXPECT_TRUE(is_row_sparse(proposed_codebook_4_2()[12].matrix()));
  EXPECT_FALSE(is_row_sparse(nr_codebook_4_2()[20].matrix()));
}

TEST(RateCurve, SingleCodewordPositiveAndDuplicatesInvariant) {
  const Codebook p = proposed_codebook_4_2();
  const Codebook one = make_codebook({p[3]});
  const auto r = rate_curve({one}, 2, {0.0, 10.0}, 500, 1);
  EXPECT_GT(r.mean_rate[0][0], 0.0);
  EXPECT_GT(r.mean_rate[0][1], r.mean_rate[0][0]);

  Codebook doubled = p;
  doubled.codewords.insert(doubled.codewords.end(), p.codewords.begin(), p.codewords.end());
  const auto c = rate_curve({p, doubled}, 4, {0.0, 5.0, 10.0}, 1000, 3);
  EXPECT_EQ(c.mean_rate[0], c.mean_rate[1]);
  for (double d : c.difference(0, 1).mean) EXPECT_EQ(d, 0.0);
}

TEST(RateCurve, MatchesDirectSelectionAverage) {
  const Codebook nr = nr_codebook_4_2();
  const std::size_t trials = 300;
  const auto r = rate_curve({nr}, 3, {7.0}, trials, 17);
  double sum = 0.0;
  const double rho = db_to_linear(7.0);
  for (std::size_t t = 0; t < trials; ++t) {
    const CMatrix H = sample_rayleigh(3, 4, 17, t).H;
    sum += achievable_rate(H, nr[select_index(H, nr, rho)], rho);
  }
  EXPECT_NEAR(r.mean_rate[0][0], sum / trials, 1e-9);
}

TEST(RateCurve, IndependentOfThreadCount) {
  const Codebook p = proposed_codebook_4_2();
  const Codebook nr = nr_codebook_4_2();
  setenv("SGRASS_THREADS", "1", 1);
  const auto a = rate_curve({p, nr}, 4, {0.0, 10.0}, 3000, 5);
  setenv("SGRASS_THREADS", "3", 1);
  const auto b = rate_curve({p, nr}, 4, {0.0, 10.0}, 3000, 5);
  unsetenv("SGRASS_THREADS");
  EXPECT_EQ(a.mean_rate, b.mean_rate);
  EXPECT_EQ(a.differences[0].mean, b.differences[0].mean);
  EXPECT_EQ(a.differences[0].standard_error, b.differences[0].standard_error);
}

TEST(RateCurve, ZeroTrials) {
  EXPECT_EQ(code_of([] { rate_curve({proposed_codebook_4_2()}, 2, {0.0}, 0, 0); }),
            ErrorCode::ConfigError);
}

TEST(GainCdf, NormalizedRayleighMean) {
  CMatrix w = CMatrix::Zero(4, 2);
  w(0, 0) = w(1, 1) = 1.0;
  const Codebook b = make_codebook({Codeword(w)});
  const auto s = gain_cdf(b, 2, 0.0, 100000, 1);
  double mean = 0.0;
  for (double v : s) mean += v;
  EXPECT_NEAR(mean / s.size(), 0.5, 0.01);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
}

TEST(GainCdf, DuplicateCodewordChangesNothing) {
  const Codebook p = proposed_codebook_4_2();
  Codebook dup = p;
  dup.codewords.push_back(p[5]);
  EXPECT_EQ(gain_cdf(p, 4, 1.0, 2000, 2), gain_cdf(dup, 4, 1.0, 2000, 2));
}

TEST(Median, OddAndEven) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}
