#pragma once

#include "mvcomp/admm.hpp"
#include "mvcomp/model.hpp"
#include "mvcomp/types.hpp"

#include <vector>

namespace mvcomp {

/// Accelerated proximal-gradient knobs.
struct ApgConfig {
  int max_iters = 1000;   ///< iteration cap
  double step = 1.0;      ///< initial step (inverse-Lipschitz estimate)
  double backtrack = 2.0; ///< step shrink factor (> 1)
  double tol = 1e-10;     ///< stop on relative objective change
};

/// Diagnostics for one accepted proximal-gradient step.
struct ApgStepInfo {
  double step = 0.0;         ///< accepted step size
  double smooth_value = 0.0; ///< smooth part at the accepted candidate
  double quad_bound = 0.0;   ///< quadratic upper bound at the candidate
  bool restarted = false;    ///< momentum was reset this iteration
};

/// Instrumentation hook fired once per outer iteration.
class ApgObserver {
 public:
  virtual ~ApgObserver() = default;
  virtual void after_iteration(int /*iter*/, const ApgStepInfo& /*info*/,
                               double /*objective*/) {}
};

/// Gradient of the smooth part sum_k E_k(X_k + S_k + P_k X0; Y_k) with
/// respect to each active block: the per-entry loss derivative on Omega_k
/// (zero elsewhere) goes to X_k and S_k directly and accumulates into the
/// k-th row block of X0.
LatentBlocks smooth_grad(const MultiViewProblem& problem, const ModelSpec& spec,
                         const LatentBlocks& blocks);

/// FISTA with backtracking line search and momentum restart on objective
/// increase: simultaneous gradient step on all active blocks, then the
/// block-separable prox (svt on X0 and each X_k, soft thresholding on each
/// S_k). The returned objective trace is exactly non-increasing; the
/// residual trace holds the per-iteration objective decrease.
SolveResult apg_solve(const MultiViewProblem& problem, const ModelSpec& spec,
                      const ApgConfig& config = {},
                      ApgObserver* observer = nullptr);

}  // namespace mvcomp
