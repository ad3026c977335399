#include "mvcomp/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace mvcomp {

namespace {

void require_binary_target(double y) {
  if (y != 1.0 && y != -1.0) {
    throw std::invalid_argument("logistic loss requires targets in {-1, +1}");
  }
}

}  // namespace

double loss_value(LossKind kind, double x, double y) {
  if (kind == LossKind::kSquared) {
    const double r = x - y;
    return 0.5 * r * r;
  }
  require_binary_target(y);
  const double margin = x * y;
  // log(1 + exp(-margin)) without overflow on either tail
  return margin >= 0 ? std::log1p(std::exp(-margin))
                     : -margin + std::log1p(std::exp(margin));
}

double loss_grad(LossKind kind, double x, double y) {
  if (kind == LossKind::kSquared) return x - y;
  require_binary_target(y);
  return -y / (1.0 + std::exp(y * x));
}

double cumulative_loss(const Matrix& x, const ViewData& view) {
  double total = 0.0;
  for (const auto& e : view.entries) {
    total += loss_value(view.loss, x(e.row, e.col), e.value);
  }
  return view.loss_weight * total;
}

Matrix z_update_squared(const Matrix& m, const Matrix& b, double mu,
                        const ViewData& view) {
  if (mu <= 0) throw std::invalid_argument("z_update_squared: mu must be positive");
  Matrix z = m - b / mu;
  const double w = view.loss_weight;
  for (const auto& e : view.entries) {
    z(e.row, e.col) = (mu * m(e.row, e.col) - b(e.row, e.col) + w * e.value) / (w + mu);
  }
  return z;
}

double majorizer_target(double zbar, double y, double tau) {
  if (tau <= 0) throw std::invalid_argument("majorizer_target: tau must be positive");
  return zbar - loss_grad(LossKind::kLogistic, zbar, y) / tau;
}

Matrix z_update_logistic(const Matrix& m, const Matrix& b, double mu,
                         const ViewData& view, const Matrix& zprev,
                         TauState& tau) {
  if (mu <= 0) throw std::invalid_argument("z_update_logistic: mu must be positive");
  Matrix z = m - b / mu;
  if (view.entries.empty()) return z;

  const double w = view.loss_weight;
  for (;;) {
    bool bound_holds = true;
    for (const auto& e : view.entries) {
      const double zbar = zprev(e.row, e.col);
      const double ybar = majorizer_target(zbar, e.value, tau.tau);
      const double cand = (w * tau.tau * ybar - b(e.row, e.col) + mu * m(e.row, e.col)) /
                          (w * tau.tau + mu);
      const double step = cand - zbar;
      const double quad = loss_value(LossKind::kLogistic, zbar, e.value) +
                          loss_grad(LossKind::kLogistic, zbar, e.value) * step +
                          0.5 * tau.tau * step * step;
      if (loss_value(LossKind::kLogistic, cand, e.value) >
          quad + 1e-12 * (1.0 + std::abs(quad))) {
        bound_holds = false;
        break;
      }
      z(e.row, e.col) = cand;
    }
    if (bound_holds) break;
    tau.tau *= tau.growth;
  }
  tau.accepted = tau.tau;
  tau.tau *= tau.shrink;
  return z;
}

}  // namespace mvcomp
