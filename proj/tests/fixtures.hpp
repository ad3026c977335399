#pragma once

// Shared deterministic test instances.

#include "mvcomp/datagen.hpp"
#include "mvcomp/model.hpp"

namespace fixtures {

/// Two-view squared-loss reference instance whose stacked shared block is
/// 20x20 (d1 = d2 = 10, n = 20); ranks resolve to (1, 1, 1).
inline mvcomp::SynthData reference_instance() {
  mvcomp::SynthSpec spec;
  spec.n = 20;
  spec.d1 = 10;
  spec.d2 = 10;
  spec.seed = 42;
  return mvcomp::gen_synthetic_problem(spec);
}

/// Same shape but view 2 carries logistic loss: its observed values are
/// replaced by the signs of the underlying noisy matrix.
inline mvcomp::MultiViewProblem mixed_loss_instance() {
  mvcomp::SynthData data = reference_instance();
  mvcomp::ViewData& labels = data.problem.views[1];
  labels.loss = mvcomp::LossKind::kLogistic;
  for (auto& e : labels.entries) e.value = e.value >= 0 ? 1.0 : -1.0;
  return data.problem;
}

}  // namespace fixtures
