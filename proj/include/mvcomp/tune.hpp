#pragma once

#include "mvcomp/admm.hpp"
#include "mvcomp/model.hpp"
#include "mvcomp/types.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace mvcomp {

/// Candidate values for the (lambda, c, alpha) hyperparameter cube. The
/// alpha list is reused for every robust view, so a 2-view robust model has
/// |lambda| * |c| * |alpha|^2 cells.
struct ParamGrid {
  std::vector<double> lambda_values;
  std::vector<double> c_values;
  std::vector<double> alpha_values;
};

/// Default grid: lambda and alpha over 10^-2..10^2 (5 log-spaced values
/// each), c over 0.1..0.9 in steps of 0.1 (1125 cells for a robust 2-view
/// model).
ParamGrid default_param_grid();

/// Nuclear-norm weights from the (lambda, c) reparameterization:
/// lambda0 = lambda/(1-c), lambda_k = lambda/c for every view.
std::pair<double, std::vector<double>> reparam_lambdas(double lambda, double c,
                                                       int view_count);

/// Spec with the template's flags and weights from (lambda, c, alpha).
/// alpha must have one entry per view when the template is robust; it is
/// ignored otherwise.
ModelSpec make_tuned_spec(const ModelSpec& spec_template, int view_count,
                          double lambda, double c,
                          const std::vector<double>& alpha);

/// Random partition of {0, ..., n-1} into k folds whose sizes differ by at
/// most one (shuffle followed by round-robin assignment).
std::vector<std::vector<int>> kfold_split(int n, int k, std::uint64_t seed);

/// Entry-level cross-validation folds: positions into each view's entry
/// list, independently split per view so every fold holds out roughly
/// 1/k of every view.
struct CvFolds {
  int k = 0;
  /// heldout[fold][view] = positions into problem.views[view].entries
  std::vector<std::vector<std::vector<int>>> heldout;
};

CvFolds make_cv_folds(const MultiViewProblem& problem, int k,
                      std::uint64_t seed);

/// What to score on a fold's held-out entries.
enum class CvMetric {
  kNormalizedError,  ///< 100 * pooled Frobenius error vs held-out values
  kLabelError,       ///< sign disagreement percent on logistic views only
};

/// Shared fit/score options for grid search and the black-box objective.
struct TuneOptions {
  AdmmConfig solver;
  CvMetric metric = CvMetric::kNormalizedError;
  int folds = 5;
  std::uint64_t seed = 0;
};

/// Mean held-out metric of `spec` across the folds: each fold's entries are
/// removed from the training problem, the model is fit with options.solver,
/// and predictions are scored against the held-out values. Solver failures
/// and undefined metrics score +infinity.
double cv_score(const MultiViewProblem& problem, const ModelSpec& spec,
                const CvFolds& folds, const TuneOptions& options);

/// One grid cell with its cross-validation score.
struct TuneCell {
  double lambda = 0.0;
  double c = 0.0;
  std::vector<double> alpha;
  double score = 0.0;
  bool failed = false;
};

/// Winner plus the complete score table in enumeration order
/// (lambda outermost, then c, then alpha_1, ..., alpha_K innermost).
struct GridResult {
  TuneCell best;
  std::vector<TuneCell> table;
};

GridResult grid_search(const MultiViewProblem& problem,
                       const ModelSpec& spec_template, const ParamGrid& grid,
                       const TuneOptions& options);

/// Derivative-free objective with an evaluation budget.
struct BlackBox {
  std::function<double(const std::vector<double>&)> evaluate;
  int budget = 100;
};

/// One recorded evaluation of a BlackBox.
struct GfoEval {
  std::vector<double> point;
  double score = 0.0;
};

/// Best point found plus the full evaluation log (at most budget entries).
struct GfoResult {
  std::vector<double> best_point;
  double best_score = 0.0;
  std::vector<GfoEval> log;
};

/// Nelder-Mead simplex search with box projection and random restarts.
/// Evaluates the box at most box.budget times; requires
/// budget >= dimension + 1.
GfoResult gfo_minimize(const BlackBox& box,
                       const std::vector<std::pair<double, double>>& bounds,
                       std::uint64_t seed);

/// Search box for gfo_minimize over the cv_objective parameterization:
/// log10(lambda) in [-2, 2], c in [0.1, 0.9], and log10(alpha_k) in [-2, 2]
/// per view when the template is robust.
std::vector<std::pair<double, double>> default_tune_bounds(
    const ModelSpec& spec_template, int view_count);

/// Cross-validation score as a black-box of the parameter vector
/// [log10(lambda), c, log10(alpha_1), ...]. Out-of-bounds coordinates are
/// clamped to `bounds` (incrementing *clamp_events when given); the score
/// path is exactly the one used by grid_search.
BlackBox cv_objective(const MultiViewProblem& problem,
                      const ModelSpec& spec_template, const CvFolds& folds,
                      const TuneOptions& options,
                      const std::vector<std::pair<double, double>>& bounds,
                      int budget, int* clamp_events = nullptr);

}  // namespace mvcomp
