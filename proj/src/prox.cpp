#include "mvcomp/prox.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace mvcomp {

namespace {

void require_finite(const Matrix& x, const char* what) {
  if (!x.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite input");
  }
}

}  // namespace

SvdFactors svd_factors(const Matrix& x) {
  require_finite(x, "svd_factors");
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactors f{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  for (Eigen::Index j = 0; j < f.u.cols(); ++j) {
    for (Eigen::Index i = 0; i < f.u.rows(); ++i) {
      if (std::abs(f.u(i, j)) > 1e-12) {
        if (f.u(i, j) < 0) {
          f.u.col(j) = -f.u.col(j);
          f.v.col(j) = -f.v.col(j);
        }
        break;
      }
    }
  }
  return f;
}

int numerical_rank(const Vector& sigma, double rel_tol) {
  if (sigma.size() == 0) return 0;
  const double cutoff = rel_tol * sigma(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff && sigma(i) > 0) ++rank;
  }
  return rank;
}

Matrix svt(const Matrix& x, double beta) {
  require_finite(x, "svt");
  if (beta < 0) throw std::invalid_argument("svt: negative threshold");
  if (beta == 0 || x.size() == 0) return x;

  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < sigma.size() && sigma(keep) > beta) ++keep;
  if (keep == 0) return Matrix::Zero(x.rows(), x.cols());
  Vector shrunk = sigma.head(keep).array() - beta;
  return svd.matrixU().leftCols(keep) * shrunk.asDiagonal() *
         svd.matrixV().leftCols(keep).transpose();
}

double soft_threshold(double x, double alpha) {
  const double mag = std::abs(x) - alpha;
  return mag > 0 ? (x > 0 ? mag : -mag) : 0.0;
}

Matrix soft_threshold(const Matrix& x, double alpha) {
  if (alpha < 0) throw std::invalid_argument("soft_threshold: negative threshold");
  return x.unaryExpr([alpha](double v) { return soft_threshold(v, alpha); });
}

Matrix project_obs(const Matrix& x, const IndexSet& omega) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const auto& idx : omega) {
    if (idx.row < 0 || idx.row >= x.rows() || idx.col < 0 || idx.col >= x.cols()) {
      throw std::invalid_argument("project_obs: index out of range");
    }
    out(idx.row, idx.col) = x(idx.row, idx.col);
  }
  return out;
}

double nuclear_norm(const Matrix& x) {
  require_finite(x, "nuclear_norm");
  if (x.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double l1_norm(const Matrix& x) {
  require_finite(x, "l1_norm");
  return x.cwiseAbs().sum();
}

double fro_norm(const Matrix& x) {
  require_finite(x, "fro_norm");
  return x.norm();
}

}  // namespace mvcomp
