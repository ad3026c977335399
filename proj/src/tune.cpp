#include "mvcomp/tune.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mvcomp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Training problem for one fold: the full problem minus that fold's
/// held-out entry positions.
MultiViewProblem fold_train_problem(const MultiViewProblem& problem,
                                    const std::vector<std::vector<int>>& heldout) {
  MultiViewProblem train;
  train.cols = problem.cols;
  train.views.reserve(problem.views.size());
  for (int v = 0; v < problem.view_count(); ++v) {
    const ViewData& view = problem.views[v];
    std::vector<char> drop(view.entries.size(), 0);
    for (int pos : heldout[v]) drop[pos] = 1;
    ViewData kept = view;
    kept.entries.clear();
    kept.entries.reserve(view.entries.size() - heldout[v].size());
    for (std::size_t i = 0; i < view.entries.size(); ++i) {
      if (!drop[i]) kept.entries.push_back(view.entries[i]);
    }
    train.views.push_back(std::move(kept));
  }
  return train;
}

/// Score one fitted fold on its held-out entries; +inf when undefined.
double fold_score(const MultiViewProblem& problem, const ModelSpec& spec,
                  const LatentBlocks& solution,
                  const std::vector<std::vector<int>>& heldout,
                  CvMetric metric) {
  double diff2 = 0.0, ref2 = 0.0;
  int wrong = 0, labeled = 0;
  for (int v = 0; v < problem.view_count(); ++v) {
    if (heldout[v].empty()) continue;
    if (metric == CvMetric::kLabelError &&
        problem.views[v].loss != LossKind::kLogistic) {
      continue;
    }
    const Matrix pred = assemble_prediction(solution, spec, problem, v);
    for (int pos : heldout[v]) {
      const Observation& obs = problem.views[v].entries[pos];
      const double p = pred(obs.row, obs.col);
      if (metric == CvMetric::kNormalizedError) {
        diff2 += (p - obs.value) * (p - obs.value);
        ref2 += obs.value * obs.value;
      } else {
        const double predicted = p >= 0.0 ? 1.0 : -1.0;
        if (predicted != obs.value) ++wrong;
        ++labeled;
      }
    }
  }
  if (metric == CvMetric::kNormalizedError) {
    if (ref2 == 0.0) return kInf;
    return 100.0 * std::sqrt(diff2 / ref2);
  }
  if (labeled == 0) return kInf;
  return 100.0 * wrong / static_cast<double>(labeled);
}

}  // namespace

ParamGrid default_param_grid() {
  ParamGrid grid;
  grid.lambda_values = {1e-2, 1e-1, 1.0, 1e1, 1e2};
  for (int i = 1; i <= 9; ++i) grid.c_values.push_back(i / 10.0);
  grid.alpha_values = {1e-2, 1e-1, 1.0, 1e1, 1e2};
  return grid;
}

std::pair<double, std::vector<double>> reparam_lambdas(double lambda, double c,
                                                       int view_count) {
  if (!(c > 0.0 && c < 1.0)) {
    throw std::invalid_argument("reparam_lambdas: c must lie strictly in (0,1)");
  }
  if (lambda < 0 || view_count < 1) {
    throw std::invalid_argument("reparam_lambdas: invalid lambda or view count");
  }
  return {lambda / (1.0 - c),
          std::vector<double>(view_count, lambda / c)};
}

ModelSpec make_tuned_spec(const ModelSpec& spec_template, int view_count,
                          double lambda, double c,
                          const std::vector<double>& alpha) {
  ModelSpec spec = spec_template;
  auto [lambda0, lambda_k] = reparam_lambdas(lambda, c, view_count);
  spec.lambda0 = lambda0;
  spec.lambda_k = std::move(lambda_k);
  if (spec.robust) {
    if (static_cast<int>(alpha.size()) != view_count) {
      throw std::invalid_argument("make_tuned_spec: need one alpha per view");
    }
    spec.alpha_k = alpha;
  } else {
    spec.alpha_k.assign(view_count, 0.0);
  }
  return spec;
}

std::vector<std::vector<int>> kfold_split(int n, int k, std::uint64_t seed) {
  if (k < 2 || k > n) {
    throw std::invalid_argument("kfold_split: need 2 <= k <= n");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<int>> folds(k);
  for (int i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

CvFolds make_cv_folds(const MultiViewProblem& problem, int k,
                      std::uint64_t seed) {
  CvFolds folds;
  folds.k = k;
  folds.heldout.assign(k, std::vector<std::vector<int>>(problem.view_count()));
  for (int v = 0; v < problem.view_count(); ++v) {
    auto split = kfold_split(static_cast<int>(problem.views[v].entries.size()),
                             k, mix_seed(seed, v));
    for (int f = 0; f < k; ++f) folds.heldout[f][v] = std::move(split[f]);
  }
  return folds;
}

double cv_score(const MultiViewProblem& problem, const ModelSpec& spec,
                const CvFolds& folds, const TuneOptions& options) {
  if (options.metric == CvMetric::kLabelError) {
    const bool any_logistic = std::any_of(
        problem.views.begin(), problem.views.end(),
        [](const ViewData& v) { return v.loss == LossKind::kLogistic; });
    if (!any_logistic) {
      throw std::invalid_argument("cv_score: label metric needs a logistic view");
    }
  }
  double total = 0.0;
  for (int f = 0; f < folds.k; ++f) {
    SolveResult fit;
    try {
      fit = admm_solve(fold_train_problem(problem, folds.heldout[f]), spec,
                       options.solver);
    } catch (const std::exception&) {
      return kInf;
    }
    const double score =
        fold_score(problem, spec, fit.blocks, folds.heldout[f], options.metric);
    if (!std::isfinite(score)) return kInf;
    total += score;
  }
  return total / folds.k;
}

GridResult grid_search(const MultiViewProblem& problem,
                       const ModelSpec& spec_template, const ParamGrid& grid,
                       const TuneOptions& options) {
  if (grid.lambda_values.empty() || grid.c_values.empty() ||
      (spec_template.robust && grid.alpha_values.empty())) {
    throw std::invalid_argument("grid_search: empty grid dimension");
  }
  for (double c : grid.c_values) {
    if (!(c > 0.0 && c < 1.0)) {
      throw std::invalid_argument("grid_search: c values must lie in (0,1)");
    }
  }
  const int K = problem.view_count();
  const int alpha_dims = spec_template.robust ? K : 0;
  const CvFolds folds = make_cv_folds(problem, options.folds, options.seed);

  GridResult result;
  // Odometer over alpha combinations, alpha_K fastest.
  std::vector<int> alpha_idx(alpha_dims, 0);
  const auto advance_alpha = [&]() -> bool {
    for (int i = alpha_dims - 1; i >= 0; --i) {
      if (++alpha_idx[i] < static_cast<int>(grid.alpha_values.size())) return true;
      alpha_idx[i] = 0;
    }
    return false;
  };

  for (double lambda : grid.lambda_values) {
    for (double c : grid.c_values) {
      std::fill(alpha_idx.begin(), alpha_idx.end(), 0);
      do {
        TuneCell cell;
        cell.lambda = lambda;
        cell.c = c;
        for (int i = 0; i < alpha_dims; ++i) {
          cell.alpha.push_back(grid.alpha_values[alpha_idx[i]]);
        }
        try {
          const ModelSpec spec =
              make_tuned_spec(spec_template, K, lambda, c, cell.alpha);
          cell.score = cv_score(problem, spec, folds, options);
        } catch (const std::exception&) {
          cell.score = kInf;
        }
        cell.failed = !std::isfinite(cell.score);
        if (result.table.empty() || cell.score < result.best.score) {
          result.best = cell;
        }
        result.table.push_back(std::move(cell));
      } while (alpha_dims > 0 && advance_alpha());
    }
  }
  return result;
}

std::vector<std::pair<double, double>> default_tune_bounds(
    const ModelSpec& spec_template, int view_count) {
  std::vector<std::pair<double, double>> bounds;
  bounds.emplace_back(-2.0, 2.0);  // log10(lambda)
  bounds.emplace_back(0.1, 0.9);   // c
  if (spec_template.robust) {
    for (int k = 0; k < view_count; ++k) bounds.emplace_back(-2.0, 2.0);
  }
  return bounds;
}

BlackBox cv_objective(const MultiViewProblem& problem,
                      const ModelSpec& spec_template, const CvFolds& folds,
                      const TuneOptions& options,
                      const std::vector<std::pair<double, double>>& bounds,
                      int budget, int* clamp_events) {
  const int K = problem.view_count();
  const std::size_t dim = 2 + (spec_template.robust ? K : 0);
  if (bounds.size() != dim) {
    throw std::invalid_argument("cv_objective: bounds dimension mismatch");
  }
  BlackBox box;
  box.budget = budget;
  box.evaluate = [problem, spec_template, folds, options, bounds, dim, K,
                  clamp_events](const std::vector<double>& raw) -> double {
    if (raw.size() != dim) {
      throw std::invalid_argument("cv_objective: wrong parameter dimension");
    }
    std::vector<double> p = raw;
    bool clamped = false;
    for (std::size_t i = 0; i < dim; ++i) {
      const double v = std::clamp(p[i], bounds[i].first, bounds[i].second);
      if (v != p[i]) clamped = true;
      p[i] = v;
    }
    if (clamped && clamp_events) ++*clamp_events;
    const double lambda = std::pow(10.0, p[0]);
    const double c = p[1];
    std::vector<double> alpha;
    if (spec_template.robust) {
      for (int k = 0; k < K; ++k) alpha.push_back(std::pow(10.0, p[2 + k]));
    }
    try {
      const ModelSpec spec = make_tuned_spec(spec_template, K, lambda, c, alpha);
      return cv_score(problem, spec, folds, options);
    } catch (const std::exception&) {
      return kInf;
    }
  };
  return box;
}

namespace {

/// Thrown internally when the evaluation budget runs out mid-iteration.
struct BudgetOut {};

}  // namespace

GfoResult gfo_minimize(const BlackBox& box,
                       const std::vector<std::pair<double, double>>& bounds,
                       std::uint64_t seed) {
  const int dim = static_cast<int>(bounds.size());
  if (dim < 1) throw std::invalid_argument("gfo_minimize: empty bounds");
  for (const auto& [lo, hi] : bounds) {
    if (!(lo < hi)) throw std::invalid_argument("gfo_minimize: empty interval");
  }
  if (!box.evaluate) throw std::invalid_argument("gfo_minimize: missing objective");
  if (box.budget < dim + 1) {
    throw std::invalid_argument("gfo_minimize: budget must be at least dimension+1");
  }

  GfoResult result;
  result.best_score = kInf;
  std::mt19937_64 rng(seed);

  const auto clamp_point = [&](std::vector<double> p) {
    for (int i = 0; i < dim; ++i) {
      p[i] = std::clamp(p[i], bounds[i].first, bounds[i].second);
    }
    return p;
  };
  const auto evaluate = [&](const std::vector<double>& raw) -> double {
    if (static_cast<int>(result.log.size()) >= box.budget) throw BudgetOut{};
    auto p = clamp_point(raw);
    const double score = box.evaluate(p);
    result.log.push_back({p, score});
    if (score < result.best_score) {
      result.best_score = score;
      result.best_point = p;
    }
    return score;
  };

  bool first_start = true;
  try {
    while (static_cast<int>(result.log.size()) < box.budget) {
      // Initial simplex: bounds center on the first start, a uniform random
      // interior point on every restart, spanned by 25%-of-range steps.
      std::vector<double> origin(dim);
      for (int i = 0; i < dim; ++i) {
        if (first_start) {
          origin[i] = 0.5 * (bounds[i].first + bounds[i].second);
        } else {
          std::uniform_real_distribution<double> u(bounds[i].first,
                                                   bounds[i].second);
          origin[i] = u(rng);
        }
      }
      first_start = false;

      std::vector<std::vector<double>> simplex{origin};
      for (int i = 0; i < dim; ++i) {
        auto vertex = origin;
        const double span = bounds[i].second - bounds[i].first;
        vertex[i] += (vertex[i] + 0.25 * span <= bounds[i].second ? 0.25 : -0.25) * span;
        simplex.push_back(clamp_point(vertex));
      }
      std::vector<double> scores;
      scores.reserve(simplex.size());
      for (const auto& vertex : simplex) scores.push_back(evaluate(vertex));

      const int max_rounds = 200 * dim;
      for (int round = 0; round < max_rounds; ++round) {
        // Order vertices by score.
        std::vector<int> order(simplex.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return scores[a] < scores[b]; });
        const int best = order.front(), worst = order.back();
        const int second_worst = order[order.size() - 2];

        // Restart when the simplex has collapsed.
        double diameter = 0.0;
        for (const auto& vertex : simplex) {
          for (int i = 0; i < dim; ++i) {
            diameter = std::max(diameter, std::abs(vertex[i] - simplex[best][i]));
          }
        }
        const double spread = scores[worst] - scores[best];
        if (diameter < 1e-9 && spread < 1e-12 * (1.0 + std::abs(scores[best]))) {
          break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (int idx : order) {
          if (idx == worst) continue;
          for (int i = 0; i < dim; ++i) centroid[i] += simplex[idx][i];
        }
        for (int i = 0; i < dim; ++i) centroid[i] /= dim;

        const auto along = [&](double t) {
          std::vector<double> p(dim);
          for (int i = 0; i < dim; ++i) {
            p[i] = centroid[i] + t * (centroid[i] - simplex[worst][i]);
          }
          return p;
        };

        const auto reflected = along(1.0);
        const double f_reflected = evaluate(reflected);
        if (f_reflected < scores[best]) {
          const auto expanded = along(2.0);
          const double f_expanded = evaluate(expanded);
          if (f_expanded < f_reflected) {
            simplex[worst] = expanded;
            scores[worst] = f_expanded;
          } else {
            simplex[worst] = reflected;
            scores[worst] = f_reflected;
          }
        } else if (f_reflected < scores[second_worst]) {
          simplex[worst] = reflected;
          scores[worst] = f_reflected;
        } else {
          const auto contracted =
              along(f_reflected < scores[worst] ? 0.5 : -0.5);
          const double f_contracted = evaluate(contracted);
          if (f_contracted < std::min(f_reflected, scores[worst])) {
            simplex[worst] = contracted;
            scores[worst] = f_contracted;
          } else {
            // Shrink every vertex toward the best one.
            for (std::size_t v = 0; v < simplex.size(); ++v) {
              if (static_cast<int>(v) == best) continue;
              for (int i = 0; i < dim; ++i) {
                simplex[v][i] =
                    simplex[best][i] + 0.5 * (simplex[v][i] - simplex[best][i]);
              }
              scores[v] = evaluate(simplex[v]);
            }
          }
        }
      }
    }
  } catch (const BudgetOut&) {
    // Budget exhausted mid-iteration; fall through with the best found.
  }
  return result;
}

}  // namespace mvcomp
