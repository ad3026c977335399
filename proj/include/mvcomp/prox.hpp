#pragma once

#include "mvcomp/types.hpp"

namespace mvcomp {

/// Thin SVD X = U * diag(sigma) * V^T with a fixed sign convention:
/// the first component of each left singular vector with magnitude above
/// 1e-12 is nonnegative. Singular values are nonincreasing.
struct SvdFactors {
  Matrix u;      // d x r
  Vector sigma;  // r, nonincreasing, >= 0
  Matrix v;      // n x r
};

SvdFactors svd_factors(const Matrix& x);

/// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const Vector& sigma, double rel_tol = 1e-12);

/// Singular value thresholding: U * diag(max(sigma_i - beta, 0)) * V^T.
/// Exact minimizer of 0.5*||x - D||_F^2 + beta*||D||_*.
Matrix svt(const Matrix& x, double beta);

/// Element-wise shrinkage sgn(x) * max(|x| - alpha, 0).
Matrix soft_threshold(const Matrix& x, double alpha);
double soft_threshold(double x, double alpha);

/// Keeps x on omega, zero elsewhere. Idempotent.
Matrix project_obs(const Matrix& x, const IndexSet& omega);

double nuclear_norm(const Matrix& x);
double l1_norm(const Matrix& x);
double fro_norm(const Matrix& x);

}  // namespace mvcomp
