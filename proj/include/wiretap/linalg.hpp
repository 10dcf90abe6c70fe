#pragma once

#include <Eigen/Dense>

namespace wiretap {

using Cholesky = Eigen::LLT<Eigen::MatrixXcd>;

// Cholesky factor of the Hermitian part of A. Throws NumericalError when A is
// not positive definite to working precision.
Cholesky factor_hpd(const Eigen::MatrixXcd& A, const char* what);

// Natural-log determinant from a Cholesky factorization.
double log_det(const Cholesky& llt);

// Tr(A^{-1} Y Y^H) for A = L L^H, evaluated as ||L^{-1} Y||_F^2.
double trace_inv_gram(const Cholesky& llt, const Eigen::MatrixXcd& Y);

}  // namespace wiretap
