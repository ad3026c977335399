#pragma once

#include "mvcomp/types.hpp"

namespace mvcomp {

/// Rows [sum_{j<k} d_j, sum_{j<=k} d_j) of the stacked matrix x0 (the
/// sub-matrix selection P_k).
Matrix select_block(const Matrix& x0, int k, const std::vector<int>& dims);

/// Row-wise stacking of per-view matrices in view order; inverse of
/// select_block over all k.
Matrix concat_blocks(const std::vector<Matrix>& parts);

/// Prediction of view k: sum of the blocks active under spec,
/// P_k x0 + x_k + s_k.
Matrix assemble_prediction(const LatentBlocks& blocks, const ModelSpec& spec,
                           const std::vector<int>& dims, int k);
Matrix assemble_prediction(const LatentBlocks& blocks, const ModelSpec& spec,
                           const MultiViewProblem& problem, int k);

/// lambda0*||X0||_* + sum_k lambda_k*||X_k||_* + sum_k alpha_k*||S_k||_1
/// + sum_k E_k(prediction_k; Y_k), absent blocks contributing zero.
double objective(const MultiViewProblem& problem, const ModelSpec& spec,
                 const LatentBlocks& blocks);

/// All invariant violations found in the problem; empty means valid.
std::vector<std::string> validate_problem(const MultiViewProblem& problem);

/// Throws invalid_argument listing every violation when the problem or the
/// spec's weight vectors are inconsistent.
void require_valid(const MultiViewProblem& problem, const ModelSpec& spec);

/// ModelSpec with the flags of one of the six named variants
/// (I00, I0R, J00, J0R, JL0, JLR) and unit weights for the active blocks.
ModelSpec spec_for_variant(const std::string& name, int view_count);

/// The three-letter variant name encoding the spec's flags.
std::string variant_name(const ModelSpec& spec);

/// Zero-initialized blocks matching the spec's flags and the problem shape.
LatentBlocks zero_blocks(const MultiViewProblem& problem, const ModelSpec& spec);

}  // namespace mvcomp
