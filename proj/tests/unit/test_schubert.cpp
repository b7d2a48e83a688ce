#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "error_code.hpp"
#include "oracles.hpp"
#include "sgrass/forge.hpp"
#include "sgrass/schubert.hpp"

using namespace sgrass;

TEST(CountPatterns, Examples) {
  EXPECT_EQ(count_patterns(4, 2, 2), 6);
  EXPECT_EQ(count_patterns(4, 2, 4), 7);
  EXPECT_EQ(count_patterns(5, 3, 3), 10);
}

TEST(CountPatterns, MatchesBruteForce) {
  for (int T = 2; T <= 6; ++T) {
    for (int M = 1; M < T; ++M) {
      for (int s = M; s <= T; ++s) {
        EXPECT_EQ(count_patterns(T, M, s), oracle::brute_force_pattern_count(T, M, s))
            << T << "," << M << "," << s;
      }
    }
  }
}

TEST(CountPatterns, LargeValuesAreExact) {
  // C(64, 64) * S(64, 2) = 2^63 - 1 does not fit comfortably in double.
  EXPECT_EQ(count_patterns(65, 2, 64), BigInt(65) * ((BigInt(1) << 63) - 1));
}

TEST(CountPatterns, RangeErrors) {
  EXPECT_EQ(code_of([] { count_patterns(4, 4, 4); }), ErrorCode::InvalidRange);
  EXPECT_EQ(code_of([] { count_patterns(4, 2, 1); }), ErrorCode::InvalidRange);
  EXPECT_EQ(code_of([] { count_patterns(4, 2, 5); }), ErrorCode::InvalidRange);
  EXPECT_EQ(code_of([] { count_patterns(4, 0, 2); }), ErrorCode::InvalidRange);
}

TEST(EnumeratePatterns, Examples) {
  const auto p = enumerate_patterns(3, 2, 2);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0].supports, (std::vector<std::vector<int>>{{1}, {2}}));
  EXPECT_EQ(p[1].supports, (std::vector<std::vector<int>>{{1}, {3}}));
  EXPECT_EQ(p[2].supports, (std::vector<std::vector<int>>{{2}, {3}}));

  const auto q = enumerate_patterns(4, 2, 4);
  ASSERT_EQ(q.size(), 7u);
  EXPECT_EQ(q[0].supports, (std::vector<std::vector<int>>{{1}, {2, 3, 4}}));
}

TEST(EnumeratePatterns, CanonicalDistinctAndCounted) {
  for (int T = 2; T <= 6; ++T) {
    for (int M = 1; M < T; ++M) {
      for (int s = M; s <= T; ++s) {
        const auto p = enumerate_patterns(T, M, s);
        ASSERT_EQ(BigInt(p.size()), count_patterns(T, M, s));
        EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
        EXPECT_EQ(std::set<SparsityPattern>(p.begin(), p.end()).size(), p.size());
        for (const auto& pat : p) {
          EXPECT_EQ(pat.sparsity(), s);
          SparsityPattern copy = pat;
          copy.normalize();
          EXPECT_EQ(copy, pat);
        }
      }
    }
  }
}

TEST(EnumeratePatterns, SizeLimit) {
  EXPECT_EQ(code_of([] { enumerate_patterns(6, 2, 6, 10); }), ErrorCode::SizeLimit);
}

TEST(Normalize, RejectsOverlap) {
  SparsityPattern p{4, 2, {{1, 2}, {2, 3}}};
  EXPECT_EQ(code_of([&] { p.normalize(); }), ErrorCode::ShapeMismatch);
  SparsityPattern q{4, 2, {{3}, {1}}};
  q.normalize();
  EXPECT_EQ(q.supports, (std::vector<std::vector<int>>{{1}, {3}}));
}

TEST(MatchingPatterns, OneFactorization) {
  for (int M = 2; M <= 8; ++M) {
    const auto pats = matching_patterns(M);
    ASSERT_EQ(static_cast<int>(pats.size()), 2 * M - 1);
    std::set<std::pair<int, int>> pairs;
    for (const auto& p : pats) {
      ASSERT_EQ(static_cast<int>(p.pairs.size()), M);
      std::vector<int> seen(static_cast<std::size_t>(2 * M + 1), 0);
      for (auto [a, b] : p.pairs) {
        EXPECT_LT(a, b);
        ++seen[static_cast<std::size_t>(a)];
        ++seen[static_cast<std::size_t>(b)];
        EXPECT_TRUE(pairs.insert({a, b}).second) << "pair reused";
      }
      for (int r = 1; r <= 2 * M; ++r) EXPECT_EQ(seen[static_cast<std::size_t>(r)], 1);
    }
    EXPECT_EQ(static_cast<int>(pairs.size()), M * (2 * M - 1));
  }
}

TEST(MatchingPatterns, AllMatchingsOfFourPoints) {
  const auto pats = matching_patterns(2);
  std::set<std::vector<std::pair<int, int>>> got;
  for (const auto& p : pats) got.insert(p.pairs);
  const std::set<std::vector<std::pair<int, int>>> want{
      {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(code_of([] { matching_patterns(1); }), ErrorCode::InvalidM);
}

TEST(PatternToCodeword, ReproducesTableEntry) {
  const SparsityPattern p = PairPattern{2, {{1, 3}, {2, 4}}}.to_sparsity();
  const std::vector<double> phases{0.0, -std::numbers::pi / 2, 0.0, 0.0};
  const Codeword w = pattern_to_codeword(p, phases, {{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_EQ(w.matrix(), proposed_codebook_4_2()[6].matrix());
}

TEST(PatternToCodeword, SingleEntryColumnsIgnorePhase) {
  const SparsityPattern p{4, 2, {{1}, {2}}};
  const std::vector<double> phases{1.2, -0.4};
  const Codeword w = pattern_to_codeword(p, phases, {{1.0}, {3.0}});
  EXPECT_EQ(w.matrix(), identity_columns(4, 2));
}

TEST(PatternToCodeword, StructuralOrthogonality) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> amp(0.1, 2.0);
  for (const auto& p : enumerate_patterns(6, 3, 5)) {
    std::vector<double> phases(5);
    for (auto& t : phases) t = u(rng);
    std::vector<std::vector<double>> amps;
    for (const auto& s : p.supports) {
      amps.emplace_back();
      for (std::size_t i = 0; i < s.size(); ++i) amps.back().push_back(amp(rng));
    }
    const Codeword w = pattern_to_codeword(p, phases, amps);
    const CMatrix g = w.matrix().adjoint() * w.matrix();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a != b) EXPECT_EQ(g(a, b), cdouble(0.0));
      }
    }
    EXPECT_LE(stiefel_residual(w.matrix()), 1e-12);
  }
}

TEST(PatternToCodeword, Errors) {
  const SparsityPattern p{4, 2, {{1, 3}, {2}}};
  const std::vector<double> phases{0.0, 0.0, 0.0};
  EXPECT_EQ(code_of([&] { pattern_to_codeword(p, phases, {{0.0, 0.0}, {1.0}}); }),
            ErrorCode::ZeroColumn);
  const std::vector<double> short_phases{0.0};
  EXPECT_EQ(code_of([&] { pattern_to_codeword(p, short_phases, {{1.0, 1.0}, {1.0}}); }),
            ErrorCode::ShapeMismatch);
}

TEST(UnitPhasor, ExactQuarterTurns) {
  EXPECT_EQ(unit_phasor(0.0), cdouble(1, 0));
  EXPECT_EQ(unit_phasor(std::numbers::pi / 2), cdouble(0, 1));
  EXPECT_EQ(unit_phasor(std::numbers::pi), cdouble(-1, 0));
  EXPECT_EQ(unit_phasor(-std::numbers::pi / 2), cdouble(0, -1));
}
