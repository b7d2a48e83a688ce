#include "sgrass/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sgrass/error.hpp"

namespace sgrass {
namespace {

void check_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::DimensionMismatch,
         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

// |<wi_k, wj_l>|^2 in plain real arithmetic; swapping operands conjugates the
// inner product exactly, so the squared magnitude is bitwise identical.
double entry_overlap(const CMatrix& wi, Eigen::Index k, const CMatrix& wj, Eigen::Index l) {
  double re = 0.0, im = 0.0;
  for (Eigen::Index r = 0; r < wi.rows(); ++r) {
    const double ar = wi(r, k).real(), ai = wi(r, k).imag();
    const double br = wj(r, l).real(), bi = wj(r, l).imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return re * re + im * im;
}

// Sums (k, l) and (l, k) terms together so that d(a, b) == d(b, a) exactly.
double analytic_distance(const CMatrix& wi, const CMatrix& wj) {
  double overlap = 0.0;
  for (Eigen::Index k = 0; k < wi.cols(); ++k) {
    overlap += entry_overlap(wi, k, wj, k);
    for (Eigen::Index l = k + 1; l < wi.cols(); ++l) {
      overlap += entry_overlap(wi, k, wj, l) + entry_overlap(wi, l, wj, k);
    }
  }
  return std::sqrt(std::max(0.0, static_cast<double>(wi.cols()) - overlap));
}

}  // namespace

Codeword::Codeword(CMatrix matrix, double tol) : matrix_(std::move(matrix)) {
  if (matrix_.cols() < 1 || matrix_.rows() <= matrix_.cols()) {
    fail(ErrorCode::DimensionMismatch, "codeword needs 1 <= M < T, got " +
                                           std::to_string(matrix_.rows()) + "x" +
                                           std::to_string(matrix_.cols()));
  }
  if (!all_finite(matrix_)) fail(ErrorCode::NotStiefel, "non-finite entry");
  const double residual = stiefel_residual(matrix_);
  if (!(residual <= tol)) {
    fail(ErrorCode::NotStiefel, "||W^H W - I||_F = " + std::to_string(residual));
  }
}

Codebook make_codebook(std::vector<Codeword> codewords, CodebookMeta meta) {
  Codebook book;
  if (!codewords.empty()) {
    book.T = codewords.front().T();
    book.M = codewords.front().M();
  }
  for (const auto& w : codewords) {
    if (w.T() != book.T || w.M() != book.M) {
      fail(ErrorCode::DimensionMismatch, "codewords do not share (T, M)");
    }
  }
  book.codewords = std::move(codewords);
  book.meta = std::move(meta);
  return book;
}

double stiefel_residual(const CMatrix& w) {
  const CMatrix gram = w.adjoint() * w;
  return fro_norm(gram - CMatrix::Identity(w.cols(), w.cols()));
}

bool validate_stiefel(const CMatrix& w, double tol) {
  return all_finite(w) && stiefel_residual(w) <= tol;
}

double chordal_distance(const Codeword& wi, const Codeword& wj) {
  check_same_shape(wi.matrix(), wj.matrix());
  return analytic_distance(wi.matrix(), wj.matrix());
}

double chordal_distance(const CMatrix& wi, const CMatrix& wj) {
  check_same_shape(wi, wj);
  if (!validate_stiefel(wi) || !validate_stiefel(wj)) {
    fail(ErrorCode::NotStiefel, "chordal_distance operands must be orthonormal");
  }
  return analytic_distance(wi, wj);
}

double projector_distance(const CMatrix& wi, const CMatrix& wj) {
  check_same_shape(wi, wj);
  return fro_norm(wi * wi.adjoint() - wj * wj.adjoint());
}

MinDistance min_chordal_distance(const std::vector<Codeword>& codewords) {
  if (codewords.size() < 2) {
    fail(ErrorCode::TooFewCodewords, "need at least two codewords");
  }
  const std::size_t n = codewords.size();
  std::vector<double> dist(n * n, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = chordal_distance(codewords[i], codewords[j]);
      dist[i * n + j] = d;
      best = std::min(best, d);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i * n + j] <= best + 1e-12) return {best, {i, j}};
    }
  }
  return {best, {0, 1}};
}

MinDistance min_chordal_distance(const Codebook& book) {
  return min_chordal_distance(book.codewords);
}

bool subspace_equal(const Codeword& wi, const Codeword& wj, double tol) {
  return projector_distance(wi.matrix(), wj.matrix()) <= tol;
}

}  // namespace sgrass
