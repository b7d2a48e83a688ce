#pragma once

// Sparsity patterns with pairwise-disjoint column supports. Every matrix on
// such a skeleton has structurally orthogonal columns, so normalizing each
// column lands it on the Stiefel manifold without any optimization.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sgrass/grassmann.hpp"

namespace sgrass {

using BigInt = boost::multiprecision::cpp_int;

/// Per-column row supports (1-based rows). Columns are kept in echelon order:
/// sorted by their smallest row, each support sorted ascending.
struct SparsityPattern {
  int T = 0;
  int M = 0;
  std::vector<std::vector<int>> supports;

  /// Total number of nonzeros.
  int sparsity() const;

  /// Sorts rows inside each support and columns by pivot row. Throws
  /// ShapeMismatch when supports are empty, overlapping or out of range.
  void normalize();

  friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;
  friend auto operator<=>(const SparsityPattern& a, const SparsityPattern& b) {
    return a.supports <=> b.supports;
  }
};

/// Perfect matching of {1, ..., 2M}: M disjoint pairs, each with first < second,
/// listed in echelon order.
struct PairPattern {
  int M = 0;
  std::vector<std::pair<int, int>> pairs;

  SparsityPattern to_sparsity() const;

  friend bool operator==(const PairPattern&, const PairPattern&) = default;
};

/// C(T,s)/M! * sum_k (-1)^k C(M,k) (M-k)^s in exact integer arithmetic.
/// Throws InvalidRange unless 1 <= M < T and M <= s <= T.
BigInt count_patterns(int T, int M, int s);

inline constexpr std::size_t kDefaultPatternCap = 1'000'000;

/// All patterns in lexicographic order of their normalized supports.
/// Throws SizeLimit when the count exceeds `cap`.
std::vector<SparsityPattern> enumerate_patterns(int T, int M, int s,
                                                std::size_t cap = kDefaultPatternCap);

/// 2M-1 perfect matchings of {1..2M} that together use every unordered pair
/// exactly once (round-robin 1-factorization, point 2M held fixed).
/// Throws InvalidM for M < 2.
std::vector<PairPattern> matching_patterns(int M);

/// e^{j theta}, exact for integer multiples of pi/2.
cdouble unit_phasor(double theta);

/// Materializes a codeword on `pattern`. `phases` has one entry per nonzero,
/// column by column in support order; `amplitudes` one nonnegative list per
/// column. Each column is rotated so its pivot entry is real positive and then
/// scaled to unit norm. Throws ShapeMismatch or ZeroColumn.
Codeword pattern_to_codeword(const SparsityPattern& pattern, std::span<const double> phases,
                             const std::vector<std::vector<double>>& amplitudes);

/// Equal-amplitude codeword on a perfect matching: column m is
/// (e_a + e^{j theta_m} e_b) / sqrt(2).
Codeword pair_codeword(const PairPattern& pattern, std::span<const double> thetas);

}  // namespace sgrass
