#pragma once

// Codebook constructors: the sparse designs (perfect-matching T = 2M family and
// the general disjoint-support family), the MCD-Manopt and Exp-Map baselines,
// and the two embedded (4,2) reference tables.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sgrass/grassmann.hpp"
#include "sgrass/schubert.hpp"

namespace sgrass {

struct OptimizerConfig {
  /// Smoothing constants for log-sum-exp continuation, strictly decreasing.
  std::vector<double> epsilon_schedule{1.0, 0.3, 0.1, 0.03, 0.01};
  int max_iterations = 200;  // per epsilon stage
  double initial_step = 0.1;
  double backtrack = 0.5;     // Armijo shrink factor in (0, 1)
  int restarts = 4;
  std::uint64_t seed = 0;
  /// When set, phase variables are restricted to these values (radians).
  std::optional<std::vector<double>> phase_grid;

  /// Throws InvalidConfig.
  void validate() const;
};

/// {-pi/2, 0, pi/2, pi}: the +-1, +-j alphabet.
std::vector<double> quarter_grid();

/// log sum_{i<j} exp(-||P_i - P_j||_F / eps), evaluated with the max-shift.
/// Throws TooFewCodewords for fewer than two codewords.
double smooth_mcd_objective(const Codebook& book, double epsilon);

struct SurrogateEval {
  double value = 0.0;
  double max_overlap = 0.0;  // max_{i<j} ||Wi^H Wj||_F^2, gives the MCD for free
};

/// Surrogate on raw Stiefel points. When `gradient` is non-null it receives the
/// Euclidean gradient G_i with dF = sum_i Re tr(G_i^H dW_i).
SurrogateEval smooth_mcd_surrogate(const std::vector<CMatrix>& points, double epsilon,
                                   std::vector<CMatrix>* gradient = nullptr);

/// Riemannian descent of the surrogate on the product of Grassmannians with
/// epsilon continuation, tangent projection (I - W W^H) G and QR retraction.
/// Returns the best iterate by MCD over all restarts; never worse than its
/// random initialization. Throws InvalidConfig.
Codebook optimize_manopt(int T, int M, std::size_t size, const OptimizerConfig& cfg);

/// sum_m sin^2((a_m - b_m) / 2): squared chordal distance between two
/// codewords on the same perfect matching.
double phase_objective(std::span<const double> a, std::span<const double> b);

struct PhaseDesign {
  std::vector<std::vector<double>> thetas;  // L instances of M phases in (-pi, pi]
  double min_objective = 0.0;               // min over instance pairs; M if L == 1
  std::size_t real_variables = 0;           // L * M
};

/// Maximizes min_{i<j} phase_objective over L instances. The first instance is
/// pinned to zero. Continuous mode descends the log-sum-exp surrogate; grid
/// mode searches the grid exactly when small enough, otherwise greedily.
PhaseDesign optimize_phases_2M(int M, int L, const OptimizerConfig& cfg);

/// T = 2M sparse codebook on the 2M-1 matchings, ceil(size / (2M-1)) phase
/// instances per matching (trailing matchings get one fewer when size is not
/// a multiple). Codewords are ordered matching by matching.
Codebook build_sparse_2M(int M, std::size_t size, const OptimizerConfig& cfg);

/// Sparse codebook over the given patterns (cycled in order), equal amplitudes,
/// with non-pivot phases optimized on the projector-distance surrogate.
Codebook build_sparse_on_patterns(const std::vector<SparsityPattern>& patterns,
                                  std::size_t size, const OptimizerConfig& cfg);

/// build_sparse_on_patterns over enumerate_patterns(T, M, s).
Codebook build_general_sparse(int T, int M, int s, std::size_t size,
                              const OptimizerConfig& cfg);

struct ExpMapConfig {
  double spread = 0.5;  // scale applied to the {+-1 +- j}/sqrt(2) alphabet
  std::uint64_t seed = 0;
};

/// exp([[0, Theta], [-Theta^H, 0]]) I_{T,M} for Theta of shape M x (T-M).
Codeword expmap_point(const CMatrix& theta);

/// Random 4-QAM Theta per codeword, redrawing near-duplicates (d < 1e-6).
/// Throws AlphabetExhausted when `size` exceeds the distinct-Theta capacity.
Codebook build_expmap(int T, int M, std::size_t size, const ExpMapConfig& cfg);

/// 22-entry NR (T, M) = (4, 2) codebook, normalized to orthonormal columns.
Codebook nr_codebook_4_2();

/// 22-entry sparse (4, 2) reference codebook.
Codebook proposed_codebook_4_2();

}  // namespace sgrass
