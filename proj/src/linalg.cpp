#include "wiretap/linalg.hpp"

#include <cmath>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

Cholesky factor_hpd(const Eigen::MatrixXcd& A, const char* what) {
  const Eigen::MatrixXcd sym = 0.5 * (A + A.adjoint());
  Cholesky llt(sym);
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + " is not positive definite");
  const Eigen::VectorXd diag = llt.matrixLLT().diagonal().real();
  // A pivot this small relative to the largest means the matrix is singular
  // to working precision even if the factorization technically succeeded.
  if (diag.minCoeff() <= 1e-7 * diag.maxCoeff())
    throw NumericalError(std::string(what) + " is singular to working precision");
  return llt;
}

double log_det(const Cholesky& llt) {
  const Eigen::MatrixXcd& L = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) acc += std::log(L(i, i).real());
  return 2.0 * acc;
}

double trace_inv_gram(const Cholesky& llt, const Eigen::MatrixXcd& Y) {
  const Eigen::MatrixXcd W = llt.matrixL().solve(Y);
  return W.squaredNorm();
}

}  // namespace wiretap
