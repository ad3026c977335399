#include "mvcomp/admm.hpp"

#include "mvcomp/prox.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mvcomp {

namespace {

/// X_k + S_k + P_k X0 for view k with absent blocks treated as zero.
Matrix view_prediction(const SolverState& state, const MultiViewProblem& problem,
                       const ModelSpec& spec, int k) {
  return assemble_prediction(state.blocks, spec, problem, k);
}

bool state_is_finite(const SolverState& state) {
  if (state.blocks.x0 && !state.blocks.x0->allFinite()) return false;
  for (const auto& m : state.blocks.xk)
    if (!m.allFinite()) return false;
  for (const auto& m : state.blocks.sk)
    if (!m.allFinite()) return false;
  for (const auto& m : state.z)
    if (!m.allFinite()) return false;
  for (const auto& m : state.b)
    if (!m.allFinite()) return false;
  return std::isfinite(state.mu);
}

}  // namespace

double augmented_lagrangian(const SolverState& state,
                            const MultiViewProblem& problem,
                            const ModelSpec& spec) {
  const int K = problem.view_count();
  double value = 0.0;
  if (spec.shared) value += spec.lambda0 * nuclear_norm(*state.blocks.x0);
  for (int k = 0; k < K; ++k) {
    if (spec.specific) value += spec.lambda_k[k] * nuclear_norm(state.blocks.xk[k]);
    if (spec.robust) value += spec.alpha_k[k] * l1_norm(state.blocks.sk[k]);
    value += cumulative_loss(state.z[k], problem.views[k]);
    const Matrix gap = view_prediction(state, problem, spec, k) - state.z[k];
    value -= (state.b[k].array() * gap.array()).sum();
    value += 0.5 * state.mu * gap.squaredNorm();
  }
  return value;
}

SolverState init_state(const MultiViewProblem& problem, const ModelSpec& spec,
                       const AdmmConfig& config) {
  SolverState state;
  state.blocks = zero_blocks(problem, spec);
  const int K = problem.view_count();
  state.z.reserve(K);
  state.b.reserve(K);
  for (int k = 0; k < K; ++k) {
    state.z.push_back(Matrix::Zero(problem.views[k].rows, problem.cols));
    state.b.push_back(Matrix::Zero(problem.views[k].rows, problem.cols));
  }
  state.mu = config.mu0;
  state.tau.assign(K, TauState{});
  return state;
}

Matrix view_residual(const SolverState& state, const MultiViewProblem& problem,
                     const ModelSpec& spec, int k) {
  return view_prediction(state, problem, spec, k) - state.z[k];
}

void update_x0(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec) {
  if (!spec.shared) throw std::invalid_argument("update_x0: spec has no shared block");
  const int K = problem.view_count();
  std::vector<Matrix> parts;
  parts.reserve(K);
  for (int k = 0; k < K; ++k) {
    Matrix target = state.z[k] + state.b[k] / state.mu;
    if (spec.specific) target -= state.blocks.xk[k];
    if (spec.robust) target -= state.blocks.sk[k];
    parts.push_back(std::move(target));
  }
  state.blocks.x0 = svt(concat_blocks(parts), spec.lambda0 / state.mu);
}

void update_xk(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec, int k) {
  if (!spec.specific) throw std::invalid_argument("update_xk: spec has no specific blocks");
  Matrix target = state.z[k] + state.b[k] / state.mu;
  if (spec.shared) target -= select_block(*state.blocks.x0, k, problem.view_rows());
  if (spec.robust) target -= state.blocks.sk[k];
  state.blocks.xk[k] = svt(target, spec.lambda_k[k] / state.mu);
}

void update_sk(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec, int k) {
  if (!spec.robust) throw std::invalid_argument("update_sk: spec has no robust blocks");
  Matrix target = state.z[k] + state.b[k] / state.mu;
  if (spec.shared) target -= select_block(*state.blocks.x0, k, problem.view_rows());
  if (spec.specific) target -= state.blocks.xk[k];
  state.blocks.sk[k] = soft_threshold(target, spec.alpha_k[k] / state.mu);
}

void update_zk(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec, int k, int mm_steps) {
  const ViewData& view = problem.views[k];
  const Matrix m = view_prediction(state, problem, spec, k);
  switch (view.loss) {
    case LossKind::kSquared:
      state.z[k] = z_update_squared(m, state.b[k], state.mu, view);
      break;
    case LossKind::kLogistic:
      for (int step = 0; step < mm_steps; ++step) {
        state.z[k] = z_update_logistic(m, state.b[k], state.mu, view,
                                       state.z[k], state.tau[k]);
      }
      break;
    default:
      throw std::invalid_argument("update_zk: unknown loss kind");
  }
}

void update_multipliers(SolverState& state, const MultiViewProblem& problem,
                        const ModelSpec& spec, double rho, double mu_cap) {
  const int K = problem.view_count();
  for (int k = 0; k < K; ++k) {
    state.b[k] -= state.mu * view_residual(state, problem, spec, k);
  }
  state.mu = std::min(state.mu * rho, mu_cap);
}

double primal_residual(const SolverState& state,
                       const MultiViewProblem& problem, const ModelSpec& spec) {
  double worst = 0.0;
  for (int k = 0; k < problem.view_count(); ++k) {
    const double gap = view_residual(state, problem, spec, k).norm();
    const double scale = std::max(1.0, state.z[k].norm());
    worst = std::max(worst, gap / scale);
  }
  return worst;
}

SolveResult admm_solve(const MultiViewProblem& problem, const ModelSpec& spec,
                       const AdmmConfig& config, AdmmObserver* observer) {
  if (config.outer_iters < 1 || config.inner_iters < 1) {
    throw std::invalid_argument("admm_solve: iteration counts must be positive");
  }
  if (config.mu0 <= 0 || config.rho <= 1 || config.primal_tol < 0 ||
      config.mm_steps < 1) {
    throw std::invalid_argument("admm_solve: invalid config");
  }
  require_valid(problem, spec);

  const auto start = std::chrono::steady_clock::now();
  SolverState state = init_state(problem, spec, config);
  const int K = problem.view_count();

  SolveResult result;
  for (int t = 0; t < config.outer_iters; ++t) {
    for (int sweep = 0; sweep < config.inner_iters; ++sweep) {
      if (spec.shared) {
        update_x0(state, problem, spec);
        if (observer) observer->after_update("x0", -1, state);
      }
      for (int k = 0; k < K; ++k) {
        if (spec.specific) {
          update_xk(state, problem, spec, k);
          if (observer) observer->after_update("xk", k, state);
        }
        if (spec.robust) {
          update_sk(state, problem, spec, k);
          if (observer) observer->after_update("sk", k, state);
        }
        update_zk(state, problem, spec, k, config.mm_steps);
        if (observer) observer->after_update("zk", k, state);
      }
      // Catch overflow before the next sweep feeds it into an SVD.
      if (!state_is_finite(state)) {
        throw std::runtime_error(
            "admm_solve: non-finite values at outer iteration " +
            std::to_string(t + 1));
      }
    }
    const double residual = primal_residual(state, problem, spec);
    update_multipliers(state, problem, spec, config.rho, config.mu_cap);
    if (!state_is_finite(state) || !std::isfinite(residual)) {
      throw std::runtime_error("admm_solve: non-finite values at outer iteration " +
                               std::to_string(t + 1));
    }
    const double objective_value = objective(problem, spec, state.blocks);
    if (!std::isfinite(objective_value)) {
      throw std::runtime_error("admm_solve: non-finite objective at outer iteration " +
                               std::to_string(t + 1));
    }
    result.objective_trace.push_back(objective_value);
    result.residual_trace.push_back(residual);
    result.time_trace.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count());
    result.iterations_run = t + 1;
    if (observer) observer->after_outer(t, state, objective_value, residual);
    if (residual <= config.primal_tol) break;
  }
  result.blocks = std::move(state.blocks);
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace mvcomp
