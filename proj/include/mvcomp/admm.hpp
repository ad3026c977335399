#pragma once

#include "mvcomp/loss.hpp"
#include "mvcomp/model.hpp"
#include "mvcomp/types.hpp"

#include <cstdint>
#include <vector>

namespace mvcomp {

/// ADMM solver knobs. Defaults converge on small/medium problems in well
/// under a second; tighten primal_tol or raise outer_iters for high-accuracy
/// reference solves.
struct AdmmConfig {
  int outer_iters = 30;      ///< outer iterations T (multiplier updates)
  int inner_iters = 10;      ///< inner block sweeps M per outer iteration
  double mu0 = 0.01;         ///< initial quadratic penalty
  double rho = 1.5;          ///< penalty growth factor (> 1)
  double primal_tol = 1e-6;  ///< early stop on the primal residual
  double mu_cap = 1e12;      ///< penalty ceiling to avoid overflow
  int mm_steps = 1;          ///< majorize-minimize passes per logistic Z-update
  std::uint64_t seed = 0;    ///< reserved; the solve itself is deterministic
};

/// Full solver state: latent blocks, per-view splitting variables Z_k,
/// multipliers B_k, the penalty mu, and per-view curvature state for
/// logistic views.
struct SolverState {
  LatentBlocks blocks;
  std::vector<Matrix> z;
  std::vector<Matrix> b;
  double mu = 0.0;
  std::vector<TauState> tau;
};

/// Outcome of a solve, shared by the ADMM and APG solvers. All traces have
/// one entry per iteration actually run; time_trace holds cumulative seconds
/// so callers can locate when a given objective level was first reached.
struct SolveResult {
  LatentBlocks blocks;
  std::vector<double> objective_trace;
  std::vector<double> residual_trace;
  std::vector<double> time_trace;
  double wall_time = 0.0;
  int iterations_run = 0;
};

/// Instrumentation hooks; the default implementation ignores everything.
/// after_update fires after every single block update inside an inner sweep
/// (which is one of "x0", "xk", "sk", "zk"; k = -1 for the shared block),
/// after_outer fires once per outer iteration.
class AdmmObserver {
 public:
  virtual ~AdmmObserver() = default;
  virtual void after_update(const char* /*which*/, int /*k*/,
                            const SolverState& /*state*/) {}
  virtual void after_outer(int /*t*/, const SolverState& /*state*/,
                           double /*objective*/, double /*residual*/) {}
};

/// Augmented Lagrangian
///   regularizers + sum_k E_k(Z_k; Y_k)
///   - sum_k tr(B_k^T (X_k + S_k + P_k X0 - Z_k))
///   + (mu/2) sum_k ||X_k + S_k + P_k X0 - Z_k||_F^2
/// with absent blocks omitted from the residual.
double augmented_lagrangian(const SolverState& state,
                            const MultiViewProblem& problem,
                            const ModelSpec& spec);

/// All-zero blocks, Z, and multipliers; mu = config.mu0.
SolverState init_state(const MultiViewProblem& problem, const ModelSpec& spec,
                       const AdmmConfig& config);

/// Residual X_k + S_k + P_k X0 - Z_k of view k under the active blocks.
Matrix view_residual(const SolverState& state, const MultiViewProblem& problem,
                     const ModelSpec& spec, int k);

/// Exact minimizer of the augmented Lagrangian over X0 (all else fixed):
/// svt of the stacked per-view targets Z_k + B_k/mu - X_k - S_k at lambda0/mu.
void update_x0(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec);

/// Exact minimizer over X_k: svt(Z_k + B_k/mu - P_k X0 - S_k, lambda_k/mu).
void update_xk(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec, int k);

/// Exact minimizer over S_k: soft_threshold(Z_k + B_k/mu - P_k X0 - X_k,
/// alpha_k/mu).
void update_sk(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec, int k);

/// Z_k update: exact closed form for squared loss, mm_steps majorized steps
/// for logistic loss (expansion point = current Z_k).
void update_zk(SolverState& state, const MultiViewProblem& problem,
               const ModelSpec& spec, int k, int mm_steps = 1);

/// B_k -= mu * (X_k + S_k + P_k X0 - Z_k) for every view, then
/// mu <- min(mu * rho, mu_cap).
void update_multipliers(SolverState& state, const MultiViewProblem& problem,
                        const ModelSpec& spec, double rho,
                        double mu_cap = 1e12);

/// max_k ||X_k + S_k + P_k X0 - Z_k||_F / max(1, ||Z_k||_F).
double primal_residual(const SolverState& state,
                       const MultiViewProblem& problem, const ModelSpec& spec);

/// Run ADMM from the zero initialization: outer_iters iterations of
/// {inner_iters sweeps over X0, then per view X_k, S_k, Z_k; multiplier and
/// penalty update}, stopping early once the primal residual falls below
/// primal_tol. Deterministic. Throws std::runtime_error naming the iteration
/// if any intermediate value turns non-finite.
SolveResult admm_solve(const MultiViewProblem& problem, const ModelSpec& spec,
                       const AdmmConfig& config = {},
                       AdmmObserver* observer = nullptr);

}  // namespace mvcomp
