#pragma once

#include "mvcomp/types.hpp"

namespace mvcomp {

/// Scalar loss e(x; y). Squared: 0.5*(x-y)^2. Logistic: log(1 + exp(-x*y))
/// for y in {-1, +1}.
double loss_value(LossKind kind, double x, double y);

/// d/dx of loss_value.
double loss_grad(LossKind kind, double x, double y);

/// Sum of loss_value over the view's observed entries, scaled by the view's
/// loss weight. Zero when Omega is empty.
double cumulative_loss(const Matrix& x, const ViewData& view);

/// Curvature state for the majorized logistic Z-update. 1/tau acts as a
/// step size: tau backs off (grows) until the quadratic bound holds, and
/// shrinks again after an accepted step. tau = 1/4 is a global bound on the
/// logistic curvature, so backtracking always terminates.
struct TauState {
  double tau = 0.25;
  double growth = 2.0;
  double shrink = 0.8;
  double accepted = 0.25;  // curvature used by the most recent accepted step
};

/// Exact minimizer of E(Z;Y) + tr(B^T Z) + (mu/2)*||M - Z||_F^2 for the
/// squared loss. Off Omega: z = m - b/mu. On Omega, with loss weight w:
/// z = (mu*m - b + w*y) / (w + mu).
Matrix z_update_squared(const Matrix& m, const Matrix& b, double mu,
                        const ViewData& view);

/// Majorization target ybar = zbar - l'(zbar)/tau with l'(z) = -y/(1+e^{yz}).
double majorizer_target(double zbar, double y, double tau);

/// One majorize-minimize step for the logistic Z subproblem, expanded at
/// zprev. Returns the exact minimizer of the quadratic bound plus the
/// multiplier and penalty terms, backtracking on tau until the bound
/// inequality holds at the candidate point.
Matrix z_update_logistic(const Matrix& m, const Matrix& b, double mu,
                         const ViewData& view, const Matrix& zprev,
                         TauState& tau);

}  // namespace mvcomp
