#include "sgrass/linalg.hpp"

#include <cmath>
#include <string>

#include "sgrass/error.hpp"

namespace sgrass {

bool all_finite(const CMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cdouble z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double fro_norm(const CMatrix& a) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += std::norm(a.data()[i]);
  return std::sqrt(acc);
}

CMatrix matexp_skew_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::NotSkewHermitian, "matrix is not square");
  }
  const double residual = fro_norm(a + a.adjoint());
  if (!(residual <= tol)) {
    fail(ErrorCode::NotSkewHermitian,
         "||A + A^H||_F = " + std::to_string(residual));
  }
  // A = jH with H = -jA Hermitian, so exp(A) = V diag(e^{j lambda}) V^H.
  const CMatrix h = (cdouble(0.0, -1.0) * a + (cdouble(0.0, -1.0) * a).adjoint()) * 0.5;
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const CMatrix& v = eig.eigenvectors();
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  CMatrix scaled = v;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    scaled.col(k) *= std::polar(1.0, lambda(k));
  }
  return scaled * v.adjoint();
}

CMatrix qr_orthonormalize(const CMatrix& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (cols == 0 || rows < cols) {
    fail(ErrorCode::RankDeficient, "need rows >= cols >= 1");
  }
  if (!all_finite(a)) fail(ErrorCode::RankDeficient, "non-finite input");
  const Eigen::JacobiSVD<CMatrix> svd(a);
  if (!(svd.singularValues()(cols - 1) > 1e-12)) {
    fail(ErrorCode::RankDeficient, "smallest singular value <= 1e-12");
  }
  const Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const auto& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < cols; ++k) {
    const cdouble d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

CMatrix identity_columns(int rows, int cols) {
  return CMatrix::Identity(rows, cols);
}

}  // namespace sgrass
