#pragma once

// Dense complex linear algebra used throughout the library. Matrices are
// Eigen column-major containers; "row-major" only matters at the file
// boundary (see codebook_io.hpp).

#include <complex>

#include <Eigen/Dense>

namespace sgrass {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

bool all_finite(const CMatrix& a);

double fro_norm(const CMatrix& a);

/// exp(A) for skew-Hermitian A. Computed from the eigendecomposition of the
/// Hermitian matrix -jA, so the result is unitary up to eigensolver accuracy.
/// Throws NotSkewHermitian when ||A + A^H||_F > tol.
CMatrix matexp_skew_hermitian(const CMatrix& a, double tol = 1e-10);

/// Thin QR with R's diagonal real and nonnegative. Throws RankDeficient when
/// the smallest singular value of A is <= 1e-12.
CMatrix qr_orthonormalize(const CMatrix& a);

/// First M columns of the T x T identity.
CMatrix identity_columns(int rows, int cols);

}  // namespace sgrass
