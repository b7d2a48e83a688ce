#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgrass/linalg.hpp"

namespace sgrass {

inline constexpr double kStiefelTol = 1e-8;

/// T x M matrix with orthonormal columns, representing a point of G(T, M).
class Codeword {
 public:
  /// Throws DimensionMismatch unless 1 <= M < T, NotStiefel unless
  /// ||W^H W - I||_F <= tol.
  explicit Codeword(CMatrix matrix, double tol = kStiefelTol);

  int T() const noexcept { return static_cast<int>(matrix_.rows()); }
  int M() const noexcept { return static_cast<int>(matrix_.cols()); }
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  CMatrix matrix_;
};

struct CodebookMeta {
  std::string method;
  std::uint64_t seed = 0;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

struct Codebook {
  int T = 0;
  int M = 0;
  std::vector<Codeword> codewords;
  CodebookMeta meta;

  std::size_t size() const noexcept { return codewords.size(); }
  const Codeword& operator[](std::size_t i) const { return codewords[i]; }
};

/// Builds a codebook and checks that every codeword shares (T, M).
Codebook make_codebook(std::vector<Codeword> codewords, CodebookMeta meta = {});

double stiefel_residual(const CMatrix& w);
bool validate_stiefel(const CMatrix& w, double tol = kStiefelTol);
inline bool validate_stiefel(const Codeword& w, double tol = kStiefelTol) {
  return validate_stiefel(w.matrix(), tol);
}

/// sqrt(max(0, M - ||Wi^H Wj||_F^2)).
double chordal_distance(const Codeword& wi, const Codeword& wj);

/// Raw-matrix variant; validates dimensions and Stiefel membership.
double chordal_distance(const CMatrix& wi, const CMatrix& wj);

/// ||Wi Wi^H - Wj Wj^H||_F. Equals sqrt(2) * chordal distance.
double projector_distance(const CMatrix& wi, const CMatrix& wj);

struct MinDistance {
  double value = 0.0;
  std::pair<std::size_t, std::size_t> pair{0, 1};  // 0-based, first < second
};

/// Exhaustive pairwise minimum. Ties within 1e-12 go to the lexicographically
/// smallest pair. Throws TooFewCodewords for |B| < 2.
MinDistance min_chordal_distance(const Codebook& book);
MinDistance min_chordal_distance(const std::vector<Codeword>& codewords);

bool subspace_equal(const Codeword& wi, const Codeword& wj, double tol);

}  // namespace sgrass
