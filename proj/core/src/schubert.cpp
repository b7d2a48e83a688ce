#include "sgrass/schubert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "sgrass/error.hpp"

namespace sgrass {
namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

void check_range(int T, int M, int s) {
  if (!(1 <= M && M < T && M <= s && s <= T)) {
    fail(ErrorCode::InvalidRange, "need 1 <= M < T and M <= s <= T, got (T,M,s)=(" +
                                      std::to_string(T) + "," + std::to_string(M) + "," +
                                      std::to_string(s) + ")");
  }
}

// Set partitions of `rows` into exactly `blocks` nonempty blocks via
// restricted growth strings; blocks come out ordered by their minimum.
void partitions(const std::vector<int>& rows, int blocks, std::vector<int>& rgs,
                std::size_t pos, int used, const std::function<void()>& emit) {
  const int remaining = static_cast<int>(rows.size() - pos);
  if (blocks - used > remaining) return;
  if (pos == rows.size()) {
    if (used == blocks) emit();
    return;
  }
  for (int b = 0; b <= std::min(used, blocks - 1); ++b) {
    rgs[pos] = b;
    partitions(rows, blocks, rgs, pos + 1, std::max(used, b + 1), emit);
  }
}

}  // namespace

int SparsityPattern::sparsity() const {
  int s = 0;
  for (const auto& col : supports) s += static_cast<int>(col.size());
  return s;
}

void SparsityPattern::normalize() {
  if (static_cast<int>(supports.size()) != M) {
    fail(ErrorCode::ShapeMismatch, "pattern has " + std::to_string(supports.size()) +
                                       " columns, expected " + std::to_string(M));
  }
  std::vector<bool> seen(static_cast<std::size_t>(T) + 1, false);
  for (auto& col : supports) {
    if (col.empty()) fail(ErrorCode::ShapeMismatch, "empty column support");
    std::sort(col.begin(), col.end());
    for (int r : col) {
      if (r < 1 || r > T) fail(ErrorCode::ShapeMismatch, "row index out of range");
      if (seen[static_cast<std::size_t>(r)]) {
        fail(ErrorCode::ShapeMismatch, "column supports overlap");
      }
      seen[static_cast<std::size_t>(r)] = true;
    }
  }
  std::sort(supports.begin(), supports.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

SparsityPattern PairPattern::to_sparsity() const {
  SparsityPattern p{2 * M, M, {}};
  for (const auto& [a, b] : pairs) p.supports.push_back({a, b});
  p.normalize();
  return p;
}

BigInt count_patterns(int T, int M, int s) {
  check_range(T, M, s);
  BigInt surjections = 0;
  for (int k = 0; k <= M; ++k) {
    BigInt term = binomial(M, k) * boost::multiprecision::pow(BigInt(M - k), static_cast<unsigned>(s));
    if (k % 2 == 0) {
      surjections += term;
    } else {
      surjections -= term;
    }
  }
  BigInt factorial = 1;
  for (int i = 2; i <= M; ++i) factorial *= i;
  if (surjections % factorial != 0) {
    fail(ErrorCode::InvalidRange, "surjection count not divisible by M!");
  }
  return binomial(T, s) * (surjections / factorial);
}

std::vector<SparsityPattern> enumerate_patterns(int T, int M, int s, std::size_t cap) {
  const BigInt total = count_patterns(T, M, s);
  if (total > BigInt(cap)) {
    fail(ErrorCode::SizeLimit, "pattern count " + total.str() + " exceeds cap " +
                                   std::to_string(cap));
  }
  std::vector<SparsityPattern> out;
  out.reserve(static_cast<std::size_t>(total));

  std::vector<int> choose(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) choose[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> rgs(static_cast<std::size_t>(s), 0);
  while (true) {
    partitions(choose, M, rgs, 0, 0, [&] {
      SparsityPattern p{T, M, std::vector<std::vector<int>>(static_cast<std::size_t>(M))};
      for (std::size_t i = 0; i < choose.size(); ++i) {
        p.supports[static_cast<std::size_t>(rgs[i])].push_back(choose[i]);
      }
      out.push_back(std::move(p));
    });
    // Next s-combination of {1..T} in lexicographic order.
    int i = s - 1;
    while (i >= 0 && choose[static_cast<std::size_t>(i)] == T - s + i + 1) --i;
    if (i < 0) break;
    ++choose[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) {
      choose[static_cast<std::size_t>(j)] = choose[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PairPattern> matching_patterns(int M) {
  if (M < 2) fail(ErrorCode::InvalidM, "matching patterns need M >= 2");
  const int n = 2 * M - 1;  // points on the circle, 0-based; point n is fixed
  std::vector<PairPattern> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int step = 1; step <= n; ++step) {
    const int r = step % n;
    PairPattern p{M, {}};
    p.pairs.emplace_back(r, n);
    for (int k = 1; k < M; ++k) {
      const int a = (r + k) % n;
      const int b = (r - k + n) % n;
      p.pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (auto& [a, b] : p.pairs) {
      ++a;
      ++b;
    }
    std::sort(p.pairs.begin(), p.pairs.end());
    out.push_back(std::move(p));
  }
  return out;
}

cdouble unit_phasor(double theta) {
  const double quarter = theta / (std::numbers::pi / 2.0);
  const double nearest = std::round(quarter);
  if (std::abs(quarter - nearest) < 1e-12) {
    switch (((static_cast<long long>(nearest) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(theta), std::sin(theta)};
}

Codeword pattern_to_codeword(const SparsityPattern& pattern, std::span<const double> phases,
                             const std::vector<std::vector<double>>& amplitudes) {
  SparsityPattern p = pattern;
  p.normalize();
  if (pattern.supports != p.supports) {
    fail(ErrorCode::ShapeMismatch, "pattern is not in echelon order");
  }
  if (static_cast<int>(phases.size()) != p.sparsity()) {
    fail(ErrorCode::ShapeMismatch, "expected " + std::to_string(p.sparsity()) + " phases, got " +
                                       std::to_string(phases.size()));
  }
  if (static_cast<int>(amplitudes.size()) != p.M) {
    fail(ErrorCode::ShapeMismatch, "expected one amplitude list per column");
  }
  CMatrix w = CMatrix::Zero(p.T, p.M);
  std::size_t offset = 0;
  for (int m = 0; m < p.M; ++m) {
    const auto& rows = p.supports[static_cast<std::size_t>(m)];
    const auto& amp = amplitudes[static_cast<std::size_t>(m)];
    if (amp.size() != rows.size()) {
      fail(ErrorCode::ShapeMismatch, "amplitude count differs from support size");
    }
    double norm2 = 0.0;
    std::size_t pivot = rows.size();
    for (std::size_t k = 0; k < amp.size(); ++k) {
      if (!(amp[k] >= 0.0) || !std::isfinite(amp[k])) {
        fail(ErrorCode::ShapeMismatch, "amplitudes must be finite and nonnegative");
      }
      norm2 += amp[k] * amp[k];
      if (pivot == rows.size() && amp[k] > 0.0) pivot = k;
    }
    if (!(norm2 > 0.0)) fail(ErrorCode::ZeroColumn, "column " + std::to_string(m + 1));
    const double norm = std::sqrt(norm2);
    const double reference = phases[offset + pivot];
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const double theta = k == pivot ? 0.0 : phases[offset + k] - reference;
      w(rows[k] - 1, m) = (amp[k] / norm) * unit_phasor(theta);
    }
    offset += rows.size();
  }
  return Codeword(std::move(w), 1e-12);
}

Codeword pair_codeword(const PairPattern& pattern, std::span<const double> thetas) {
  if (static_cast<int>(thetas.size()) != pattern.M ||
      static_cast<int>(pattern.pairs.size()) != pattern.M) {
    fail(ErrorCode::ShapeMismatch, "need one phase per column");
  }
  const SparsityPattern p = pattern.to_sparsity();
  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(2 * pattern.M));
  for (const auto& col : p.supports) {
    const auto it = std::find_if(pattern.pairs.begin(), pattern.pairs.end(),
                                 [&](const auto& pr) { return pr.first == col.front(); });
    const auto m = static_cast<std::size_t>(it - pattern.pairs.begin());
    phases.push_back(0.0);
    phases.push_back(thetas[m]);
  }
  const std::vector<std::vector<double>> amplitudes(static_cast<std::size_t>(pattern.M), {1.0, 1.0});
  return pattern_to_codeword(p, phases, amplitudes);
}

}  // namespace sgrass
