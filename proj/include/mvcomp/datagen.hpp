#pragma once

#include "mvcomp/model.hpp"
#include "mvcomp/types.hpp"

#include <cstdint>
#include <vector>

namespace mvcomp {

/// Parameters of the two-view synthetic generator. Negative rank/scale
/// fields mean "use the default": ranks ceil(0.05 * min(dims)) and outlier
/// scale 10 * noise_sd. resolve() fills those in.
struct SynthSpec {
  int n = 200;                    ///< samples (columns)
  int d1 = 50;                    ///< rows of view 1
  int d2 = 50;                    ///< rows of view 2
  int r0 = -1;                    ///< rank of the shared block
  int r1 = -1;                    ///< rank of view 1's specific block
  int r2 = -1;                    ///< rank of view 2's specific block
  double outlier_density = 0.1;   ///< fraction of entries that are outliers
  double outlier_scale = -1.0;    ///< outliers drawn Uniform[-a, a]
  double noise_sd = 1.0;          ///< Gaussian noise standard deviation
  double observed_fraction = 0.5; ///< fraction of entries observed
  std::uint64_t seed = 0;

  /// Copy with all sentinel fields replaced by their concrete defaults.
  SynthSpec resolve() const;
};

/// Generated problem plus everything needed to score a completion:
/// the ground-truth blocks, the complete noisy views, and the per-view
/// train/test index partitions.
struct SynthData {
  MultiViewProblem problem;          ///< observed (train) entries only
  LatentBlocks truth;                ///< generating X0, X_k, S_k
  std::vector<Matrix> full_views;    ///< complete noisy Y_k
  std::vector<IndexSet> train_sets;  ///< observed index sets
  std::vector<IndexSet> test_sets;   ///< held-out complements
  SynthSpec resolved;                ///< spec with defaults filled in
};

/// U V^T with U (d x r), V (n x r) i.i.d. standard normal; rank r almost
/// surely. r = 0 gives the zero matrix.
Matrix gen_low_rank(int d, int n, int r, std::uint64_t seed);

/// Matrix with exactly floor(density * d * n) nonzero entries on a uniform
/// random support, values i.i.d. Uniform[-a, a].
Matrix gen_sparse_outliers(int d, int n, double density, double a,
                           std::uint64_t seed);

/// Exactly floor(fraction * d * n) distinct indices drawn uniformly without
/// replacement, sorted by (row, col).
IndexSet sample_mask(int d, int n, double fraction, std::uint64_t seed);

/// All indices of a d x n grid not present in `mask` (sorted input required).
IndexSet mask_complement(int d, int n, const IndexSet& mask);

/// Build the full two-view instance: Y_k = P_k X0 + X_k + S_k + E_k with
/// E_k i.i.d. N(0, noise_sd^2), observation masks per view, and the observed
/// entries packaged as a squared-loss MultiViewProblem.
SynthData gen_synthetic_problem(const SynthSpec& spec);

}  // namespace mvcomp
