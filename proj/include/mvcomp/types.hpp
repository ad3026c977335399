#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvcomp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class LossKind { kSquared, kLogistic };

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& name);

/// One observed entry (row, col, value) of a view matrix.
struct Observation {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct MatrixIndex {
  int row = 0;
  int col = 0;
};

using IndexSet = std::vector<MatrixIndex>;

/// A single view: a d x n matrix observed on a sparse entry set Omega.
struct ViewData {
  int rows = 0;  // d_k
  int cols = 0;  // n, must agree across views of one problem
  std::vector<Observation> entries;
  LossKind loss = LossKind::kSquared;
  double loss_weight = 1.0;  // optional per-view multiplier on the loss term
};

/// K co-occurring views over the same n samples (columns).
struct MultiViewProblem {
  std::vector<ViewData> views;
  int cols = 0;  // n

  int view_count() const { return static_cast<int>(views.size()); }
  std::vector<int> view_rows() const;
  int total_rows() const;
};

/// Which latent blocks a model variant uses, and their penalty weights.
///
/// The six named variants map onto the three flags as:
///   I00 = (shared off, specific on,  robust off)   I0R = (off, on,  on)
///   J00 = (on,  off, off)                          J0R = (on,  off, on)
///   JL0 = (on,  on,  off)                          JLR = (on,  on,  on)
struct ModelSpec {
  bool shared = true;    // stacked block X0, nuclear-norm weight lambda0
  bool specific = true;  // per-view blocks X_k, weights lambda_k
  bool robust = false;   // per-view sparse blocks S_k, l1 weights alpha_k
  double lambda0 = 1.0;
  std::vector<double> lambda_k;
  std::vector<double> alpha_k;
};

/// The latent variables of a fit; absent blocks stay disengaged.
struct LatentBlocks {
  std::optional<Matrix> x0;  // (sum_k d_k) x n
  std::vector<Matrix> xk;    // size K when the specific flag is on
  std::vector<Matrix> sk;    // size K when the robust flag is on
};

/// Derives a decorrelated stream seed; used wherever one user-facing seed
/// has to drive several independent draws.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mvcomp
