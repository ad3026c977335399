#include "mvcomp/apg.hpp"

#include "mvcomp/loss.hpp"
#include "mvcomp/prox.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mvcomp {

namespace {

/// ca*a + cb*b over the active blocks (shapes must agree).
LatentBlocks combine(const LatentBlocks& a, double ca, const LatentBlocks& b,
                     double cb) {
  LatentBlocks out;
  if (a.x0) out.x0 = ca * (*a.x0) + cb * (*b.x0);
  out.xk.reserve(a.xk.size());
  for (std::size_t k = 0; k < a.xk.size(); ++k)
    out.xk.push_back(ca * a.xk[k] + cb * b.xk[k]);
  out.sk.reserve(a.sk.size());
  for (std::size_t k = 0; k < a.sk.size(); ++k)
    out.sk.push_back(ca * a.sk[k] + cb * b.sk[k]);
  return out;
}

double inner(const LatentBlocks& a, const LatentBlocks& b) {
  double value = 0.0;
  if (a.x0) value += (a.x0->array() * b.x0->array()).sum();
  for (std::size_t k = 0; k < a.xk.size(); ++k)
    value += (a.xk[k].array() * b.xk[k].array()).sum();
  for (std::size_t k = 0; k < a.sk.size(); ++k)
    value += (a.sk[k].array() * b.sk[k].array()).sum();
  return value;
}

double squared_norm(const LatentBlocks& a) { return inner(a, a); }

bool blocks_finite(const LatentBlocks& a) {
  if (a.x0 && !a.x0->allFinite()) return false;
  for (const auto& m : a.xk)
    if (!m.allFinite()) return false;
  for (const auto& m : a.sk)
    if (!m.allFinite()) return false;
  return true;
}

/// Smooth part of the objective: the summed per-view losses.
double smooth_value(const MultiViewProblem& problem, const ModelSpec& spec,
                    const LatentBlocks& blocks) {
  double value = 0.0;
  for (int k = 0; k < problem.view_count(); ++k) {
    value += cumulative_loss(assemble_prediction(blocks, spec, problem, k),
                             problem.views[k]);
  }
  return value;
}

/// Nonsmooth part: the weighted nuclear and l1 penalties.
double penalty_value(const ModelSpec& spec, const LatentBlocks& blocks) {
  double value = 0.0;
  if (spec.shared) value += spec.lambda0 * nuclear_norm(*blocks.x0);
  for (std::size_t k = 0; k < blocks.xk.size(); ++k)
    value += spec.lambda_k[k] * nuclear_norm(blocks.xk[k]);
  for (std::size_t k = 0; k < blocks.sk.size(); ++k)
    value += spec.alpha_k[k] * l1_norm(blocks.sk[k]);
  return value;
}

/// Block-separable prox of step*penalty at the given point.
LatentBlocks prox_step(const LatentBlocks& point, const ModelSpec& spec,
                       double step) {
  LatentBlocks out;
  if (spec.shared) out.x0 = svt(*point.x0, step * spec.lambda0);
  out.xk.reserve(point.xk.size());
  for (std::size_t k = 0; k < point.xk.size(); ++k)
    out.xk.push_back(svt(point.xk[k], step * spec.lambda_k[k]));
  out.sk.reserve(point.sk.size());
  for (std::size_t k = 0; k < point.sk.size(); ++k)
    out.sk.push_back(soft_threshold(point.sk[k], step * spec.alpha_k[k]));
  return out;
}

}  // namespace

LatentBlocks smooth_grad(const MultiViewProblem& problem, const ModelSpec& spec,
                         const LatentBlocks& blocks) {
  const auto dims = problem.view_rows();
  LatentBlocks grad = zero_blocks(problem, spec);
  int offset = 0;
  for (int k = 0; k < problem.view_count(); ++k) {
    const ViewData& view = problem.views[k];
    const Matrix pred = assemble_prediction(blocks, spec, dims, k);
    Matrix g = Matrix::Zero(view.rows, problem.cols);
    for (const auto& e : view.entries) {
      g(e.row, e.col) = view.loss_weight * loss_grad(view.loss, pred(e.row, e.col), e.value);
    }
    if (spec.shared) grad.x0->middleRows(offset, dims[k]) = g;
    if (spec.robust) grad.sk[k] = g;
    if (spec.specific) grad.xk[k] = std::move(g);
    offset += dims[k];
  }
  return grad;
}

SolveResult apg_solve(const MultiViewProblem& problem, const ModelSpec& spec,
                      const ApgConfig& config, ApgObserver* observer) {
  if (config.max_iters < 1 || config.step <= 0 || config.backtrack <= 1 ||
      config.tol < 0) {
    throw std::invalid_argument("apg_solve: invalid config");
  }
  require_valid(problem, spec);

  const auto start = std::chrono::steady_clock::now();

  LatentBlocks x_cur = zero_blocks(problem, spec);
  LatentBlocks y = x_cur;
  double t_momentum = 1.0;
  double step = config.step;
  double objective_cur = objective(problem, spec, x_cur);
  if (!std::isfinite(objective_cur)) {
    throw std::runtime_error("apg_solve: non-finite objective at iteration 0");
  }

  // Proximal-gradient step from `point` with backtracking: shrink the step
  // until the smooth part is below its quadratic model at the candidate.
  const auto backtracked_step = [&](const LatentBlocks& point, int iter,
                                    ApgStepInfo& info) {
    const double f_point = smooth_value(problem, spec, point);
    const LatentBlocks grad = smooth_grad(problem, spec, point);
    for (int attempt = 0; attempt < 100; ++attempt) {
      LatentBlocks candidate =
          prox_step(combine(point, 1.0, grad, -step), spec, step);
      const LatentBlocks delta = combine(candidate, 1.0, point, -1.0);
      const double f_candidate = smooth_value(problem, spec, candidate);
      const double bound = f_point + inner(grad, delta) +
                           squared_norm(delta) / (2.0 * step);
      if (f_candidate <= bound + 1e-12 * (1.0 + std::abs(bound))) {
        info.step = step;
        info.smooth_value = f_candidate;
        info.quad_bound = bound;
        return candidate;
      }
      step /= config.backtrack;
    }
    throw std::runtime_error("apg_solve: backtracking failed at iteration " +
                             std::to_string(iter + 1));
  };

  SolveResult result;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    ApgStepInfo info;
    LatentBlocks x_new = backtracked_step(y, iter, info);
    double objective_new = objective(problem, spec, x_new);

    if (objective_new > objective_cur) {
      // Momentum overshot: restart from the last accepted point. A plain
      // backtracked step from x_cur cannot increase the objective.
      info.restarted = true;
      t_momentum = 1.0;
      x_new = backtracked_step(x_cur, iter, info);
      objective_new = objective(problem, spec, x_new);
      if (objective_new > objective_cur) {
        // No numerically representable descent is left; stop here so the
        // trace stays non-increasing.
        break;
      }
    }

    if (!blocks_finite(x_new) || !std::isfinite(objective_new)) {
      throw std::runtime_error("apg_solve: non-finite values at iteration " +
                               std::to_string(iter + 1));
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
    const double beta = (t_momentum - 1.0) / t_next;
    y = combine(x_new, 1.0 + beta, x_cur, -beta);
    x_cur = std::move(x_new);
    t_momentum = t_next;

    const double change = objective_cur - objective_new;
    objective_cur = objective_new;
    result.objective_trace.push_back(objective_cur);
    result.residual_trace.push_back(change);
    result.time_trace.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count());
    result.iterations_run = iter + 1;
    if (observer) observer->after_iteration(iter, info, objective_cur);
    if (change <= config.tol * std::max(1.0, std::abs(objective_cur)) &&
        iter > 0) {
      break;
    }
  }
  result.blocks = std::move(x_cur);
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace mvcomp
