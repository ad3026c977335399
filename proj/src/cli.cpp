#include "mvcomp/cli.hpp"

#include "mvcomp/admm.hpp"
#include "mvcomp/apg.hpp"
#include "mvcomp/datagen.hpp"
#include "mvcomp/io.hpp"
#include "mvcomp/metrics.hpp"
#include "mvcomp/model.hpp"
#include "mvcomp/tune.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace mvcomp {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Broadcast a per-view weight list: empty -> all fallback, single -> K
/// copies, length K -> as given.
std::vector<double> broadcast(std::vector<double> given, int K, double fallback,
                              const char* what) {
  if (given.empty()) return std::vector<double>(K, fallback);
  if (given.size() == 1) return std::vector<double>(K, given.front());
  if (static_cast<int>(given.size()) == K) return given;
  throw std::invalid_argument(std::string(what) +
                              ": give one value, or one per view");
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

/// Every command drops a meta.json capturing how to reproduce its outputs.
void write_meta(const fs::path& dir, const std::string& command,
                const std::vector<std::string>& argv, const json& config,
                const std::vector<std::string>& outputs) {
  json meta{{"command", command},
            {"argv", argv},
            {"config", config},
            {"outputs", outputs}};
  write_json(meta, dir / "meta.json");
}

MultiViewProblem load_views(const std::vector<std::string>& paths,
                            const std::vector<double>& loss_weights) {
  MultiViewProblem problem;
  for (const auto& path : paths) problem.views.push_back(load_coo(path));
  problem.cols = problem.views.front().cols;
  const auto weights =
      broadcast(loss_weights, problem.view_count(), 1.0, "--loss-weight");
  for (int k = 0; k < problem.view_count(); ++k) {
    problem.views[k].loss_weight = weights[k];
  }
  const auto errors = validate_problem(problem);
  if (!errors.empty()) {
    std::string message = "invalid input views:";
    for (const auto& e : errors) message += "\n  " + e;
    throw std::invalid_argument(message);
  }
  return problem;
}

json spec_to_json(const ModelSpec& spec) {
  return json{{"variant", variant_name(spec)}, {"lambda0", spec.lambda0},
              {"lambda_k", spec.lambda_k},     {"alpha_k", spec.alpha_k},
              {"shared", spec.shared},         {"specific", spec.specific},
              {"robust", spec.robust}};
}

json admm_config_to_json(const AdmmConfig& c) {
  return json{{"outer_iters", c.outer_iters}, {"inner_iters", c.inner_iters},
              {"mu0", c.mu0},                 {"rho", c.rho},
              {"primal_tol", c.primal_tol},   {"mu_cap", c.mu_cap},
              {"mm_steps", c.mm_steps},       {"seed", c.seed}};
}

json apg_config_to_json(const ApgConfig& c) {
  return json{{"max_iters", c.max_iters},
              {"step", c.step},
              {"backtrack", c.backtrack},
              {"tol", c.tol}};
}

/// Objective/residual per iteration; deterministic, so reproducible byte
/// for byte. Timing lives in a separate file.
void write_trace_csv(const SolveResult& result, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "iter,objective,residual\n";
  char buffer[64];
  for (int i = 0; i < result.iterations_run; ++i) {
    out << i + 1 << ',';
    std::snprintf(buffer, sizeof buffer, "%.17g", result.objective_trace[i]);
    out << buffer << ',';
    std::snprintf(buffer, sizeof buffer, "%.17g", result.residual_trace[i]);
    out << buffer << '\n';
  }
}

void write_timing_csv(const SolveResult& result, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "iter,seconds\n";
  for (int i = 0; i < result.iterations_run; ++i) {
    out << i + 1 << ',' << result.time_trace[i] << '\n';
  }
  out << "total," << result.wall_time << '\n';
}

// ---------------------------------------------------------------------------
// Option blocks shared by several subcommands.

struct SolverOptions {
  std::string solver = "admm";
  AdmmConfig admm;
  ApgConfig apg;
};

void add_admm_options(CLI::App* cmd, AdmmConfig& c) {
  cmd->add_option("--outer-iters", c.outer_iters, "ADMM outer iterations");
  cmd->add_option("--inner-iters", c.inner_iters, "ADMM inner sweeps per outer iteration");
  cmd->add_option("--mu0", c.mu0, "initial penalty parameter");
  cmd->add_option("--rho", c.rho, "penalty growth factor");
  cmd->add_option("--primal-tol", c.primal_tol, "early-stop primal residual");
  cmd->add_option("--mm-steps", c.mm_steps, "majorize-minimize passes per logistic Z-update");
}

void add_apg_options(CLI::App* cmd, ApgConfig& c) {
  cmd->add_option("--max-iters", c.max_iters, "APG iteration cap");
  cmd->add_option("--step", c.step, "APG initial step size");
  cmd->add_option("--backtrack", c.backtrack, "APG step shrink factor");
  cmd->add_option("--tol", c.tol, "APG relative objective-change stop");
}

struct WeightOptions {
  double lambda0 = 1.0;
  std::vector<double> lambda;
  std::vector<double> alpha;
  double tuned_lambda = -1.0;  ///< with --c: reparameterized weights
  double c = -1.0;
};

void add_weight_options(CLI::App* cmd, WeightOptions& w) {
  cmd->add_option("--lambda0", w.lambda0, "nuclear weight of the shared block");
  cmd->add_option("--lambda", w.lambda, "nuclear weight(s) of the specific blocks");
  cmd->add_option("--alpha", w.alpha, "l1 weight(s) of the sparse blocks");
  cmd->add_option("--tuned-lambda", w.tuned_lambda,
                  "lambda of the (lambda, c) reparameterization; needs --c");
  cmd->add_option("--c", w.c, "c of the (lambda, c) reparameterization");
}

ModelSpec build_spec(const std::string& model, int K, const WeightOptions& w) {
  ModelSpec spec = spec_for_variant(model, K);
  if ((w.tuned_lambda >= 0) != (w.c >= 0)) {
    throw std::invalid_argument("--tuned-lambda and --c must be given together");
  }
  if (w.tuned_lambda >= 0) {
    auto [lambda0, lambda_k] = reparam_lambdas(w.tuned_lambda, w.c, K);
    spec.lambda0 = lambda0;
    spec.lambda_k = std::move(lambda_k);
  } else {
    spec.lambda0 = w.lambda0;
    spec.lambda_k = broadcast(w.lambda, K, 1.0, "--lambda");
  }
  spec.alpha_k = broadcast(w.alpha, K, 1.0, "--alpha");
  return spec;
}

// ---------------------------------------------------------------------------
// Subcommand handlers.

int run_synth(const SynthSpec& raw, const std::string& out,
              const std::vector<std::string>& argv) {
  const fs::path dir(out);
  fs::create_directories(dir);
  SynthData data = gen_synthetic_problem(raw);

  std::vector<std::string> outputs;
  const auto emit = [&](const std::string& name, auto&& writer) {
    writer(dir / name);
    outputs.push_back(name);
  };
  for (int k = 0; k < 2; ++k) {
    const std::string i = std::to_string(k + 1);
    emit("view" + i + ".coo",
         [&](const fs::path& p) { save_coo(data.problem.views[k], p.string()); });
    emit("full_view" + i + ".csv",
         [&](const fs::path& p) { write_dense_csv(data.full_views[k], p.string()); });
    emit("truth_x" + i + ".csv",
         [&](const fs::path& p) { write_dense_csv(data.truth.xk[k], p.string()); });
    emit("truth_s" + i + ".csv",
         [&](const fs::path& p) { write_dense_csv(data.truth.sk[k], p.string()); });
    emit("train" + i + ".idx",
         [&](const fs::path& p) { save_index_set(data.train_sets[k], p.string()); });
    emit("test" + i + ".idx",
         [&](const fs::path& p) { save_index_set(data.test_sets[k], p.string()); });
  }
  emit("truth_x0.csv",
       [&](const fs::path& p) { write_dense_csv(*data.truth.x0, p.string()); });

  const SynthSpec& s = data.resolved;
  write_meta(dir, "synth", argv,
             json{{"n", s.n},
                  {"d1", s.d1},
                  {"d2", s.d2},
                  {"r0", s.r0},
                  {"r1", s.r1},
                  {"r2", s.r2},
                  {"outlier_density", s.outlier_density},
                  {"outlier_scale", s.outlier_scale},
                  {"noise_sd", s.noise_sd},
                  {"observed_fraction", s.observed_fraction},
                  {"seed", s.seed}},
             outputs);
  return 0;
}

int run_solve(const std::vector<std::string>& view_paths,
              const std::vector<double>& loss_weights, const std::string& model,
              const WeightOptions& weights, const SolverOptions& solver,
              const std::string& out, const std::vector<std::string>& argv) {
  const fs::path dir(out);
  fs::create_directories(dir);
  MultiViewProblem problem = load_views(view_paths, loss_weights);
  const int K = problem.view_count();
  const ModelSpec spec = build_spec(model, K, weights);

  SolveResult result;
  if (solver.solver == "admm") {
    result = admm_solve(problem, spec, solver.admm);
  } else if (solver.solver == "apg") {
    result = apg_solve(problem, spec, solver.apg);
  } else {
    throw std::invalid_argument("unknown solver '" + solver.solver + "'");
  }

  std::vector<std::string> outputs;
  const auto emit_csv = [&](const std::string& name, const Matrix& m) {
    write_dense_csv(m, (dir / name).string());
    outputs.push_back(name);
  };
  if (spec.shared) emit_csv("x0.csv", *result.blocks.x0);
  for (int k = 0; k < K; ++k) {
    const std::string i = std::to_string(k + 1);
    if (spec.specific) emit_csv("x" + i + ".csv", result.blocks.xk[k]);
    if (spec.robust) emit_csv("s" + i + ".csv", result.blocks.sk[k]);
    emit_csv("prediction" + i + ".csv",
             assemble_prediction(result.blocks, spec, problem, k));
  }
  write_trace_csv(result, dir / "trace.csv");
  outputs.push_back("trace.csv");
  write_timing_csv(result, dir / "timing.csv");
  outputs.push_back("timing.csv");

  write_meta(dir, "solve", argv,
             json{{"views", view_paths},
                  {"model", model},
                  {"spec", spec_to_json(spec)},
                  {"solver", solver.solver},
                  {"admm", admm_config_to_json(solver.admm)},
                  {"apg", apg_config_to_json(solver.apg)},
                  {"iterations_run", result.iterations_run},
                  {"final_objective", result.objective_trace.back()}},
             outputs);
  std::cout << "solved " << model << " with " << solver.solver << ": objective "
            << result.objective_trace.back() << " after "
            << result.iterations_run << " iterations\n";
  return 0;
}

int run_eval(const std::string& pred_path, const std::string& truth_path,
             const std::string& set_path, const std::string& metric,
             const std::string& out, const std::vector<std::string>& argv) {
  const Matrix pred = load_dense_csv(pred_path);
  const Matrix truth = load_dense_csv(truth_path);
  const IndexSet set = load_index_set(set_path);
  double value = 0.0;
  if (metric == "normalized") {
    value = normalized_test_error(pred, truth, set);
  } else if (metric == "label") {
    value = label_error_percent(pred, truth, set);
  } else if (metric == "reconstruction") {
    value = relative_reconstruction_error(pred, truth, set);
  } else {
    throw std::invalid_argument("unknown metric '" + metric + "'");
  }
  std::cout << metric << " " << value << "\n";
  if (!out.empty()) {
    const fs::path path(out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_json(json{{"metric", metric},
                    {"value", value},
                    {"pred", pred_path},
                    {"truth", truth_path},
                    {"set", set_path},
                    {"argv", argv}},
               path);
  }
  return 0;
}

CvMetric pick_metric(const std::string& name, const MultiViewProblem& problem) {
  if (name == "normalized") return CvMetric::kNormalizedError;
  if (name == "label") return CvMetric::kLabelError;
  if (name == "auto") {
    for (const auto& view : problem.views) {
      if (view.loss == LossKind::kLogistic) return CvMetric::kLabelError;
    }
    return CvMetric::kNormalizedError;
  }
  throw std::invalid_argument("unknown CV metric '" + name + "'");
}

int run_tune(const std::vector<std::string>& view_paths,
             const std::vector<double>& loss_weights, const std::string& model,
             const std::string& mode, const std::string& metric_name,
             TuneOptions options, ParamGrid grid, int budget,
             const std::string& out, const std::vector<std::string>& argv) {
  const fs::path dir(out);
  fs::create_directories(dir);
  MultiViewProblem problem = load_views(view_paths, loss_weights);
  const int K = problem.view_count();
  const ModelSpec spec_template = spec_for_variant(model, K);
  options.metric = pick_metric(metric_name, problem);

  std::vector<std::string> outputs;
  json best;
  if (mode == "grid") {
    const GridResult result = grid_search(problem, spec_template, grid, options);
    std::ofstream table(dir / "score_table.csv");
    table << "lambda,c";
    for (std::size_t a = 0; a < result.table.front().alpha.size(); ++a) {
      table << ",alpha" << a + 1;
    }
    table << ",score,failed\n";
    for (const auto& cell : result.table) {
      table << cell.lambda << ',' << cell.c;
      for (double a : cell.alpha) table << ',' << a;
      table << ',' << cell.score << ',' << (cell.failed ? 1 : 0) << '\n';
    }
    outputs.push_back("score_table.csv");
    best = json{{"lambda", result.best.lambda},
                {"c", result.best.c},
                {"alpha", result.best.alpha},
                {"score", result.best.score},
                {"cells", result.table.size()}};
  } else if (mode == "gfo") {
    const auto bounds = default_tune_bounds(spec_template, K);
    const CvFolds folds = make_cv_folds(problem, options.folds, options.seed);
    int clamp_events = 0;
    const BlackBox box = cv_objective(problem, spec_template, folds, options,
                                      bounds, budget, &clamp_events);
    const GfoResult result = gfo_minimize(box, bounds, mix_seed(options.seed, 100));
    std::ofstream log(dir / "eval_log.csv");
    log << "log10_lambda,c";
    for (std::size_t a = 0; 2 + a < bounds.size(); ++a) log << ",log10_alpha" << a + 1;
    log << ",score\n";
    for (const auto& eval : result.log) {
      for (std::size_t i = 0; i < eval.point.size(); ++i) {
        if (i) log << ',';
        log << eval.point[i];
      }
      log << ',' << eval.score << '\n';
    }
    outputs.push_back("eval_log.csv");
    std::vector<double> alpha;
    for (std::size_t a = 2; a < result.best_point.size(); ++a) {
      alpha.push_back(std::pow(10.0, result.best_point[a]));
    }
    best = json{{"lambda", std::pow(10.0, result.best_point[0])},
                {"c", result.best_point[1]},
                {"alpha", alpha},
                {"score", result.best_score},
                {"evaluations", result.log.size()},
                {"clamp_events", clamp_events}};
  } else {
    throw std::invalid_argument("unknown tune mode '" + mode + "'");
  }
  write_json(best, dir / "best.json");
  outputs.push_back("best.json");

  write_meta(dir, "tune", argv,
             json{{"views", view_paths},
                  {"model", model},
                  {"mode", mode},
                  {"metric", metric_name},
                  {"folds", options.folds},
                  {"seed", options.seed},
                  {"budget", budget},
                  {"solver", admm_config_to_json(options.solver)},
                  {"grid",
                   json{{"lambda_values", grid.lambda_values},
                        {"c_values", grid.c_values},
                        {"alpha_values", grid.alpha_values}}}},
             outputs);
  std::cout << "tune (" << mode << ") best score " << best["score"] << "\n";
  return 0;
}

int run_bench(SynthSpec synth, const std::string& model,
              const SolverOptions& solver, const std::string& out,
              const std::vector<std::string>& argv) {
  const fs::path dir(out);
  fs::create_directories(dir);
  SynthData data = gen_synthetic_problem(synth);
  const int K = data.problem.view_count();
  const ModelSpec spec = spec_for_variant(model, K);

  const SolveResult admm = admm_solve(data.problem, spec, solver.admm);
  const SolveResult apg = apg_solve(data.problem, spec, solver.apg);

  std::ofstream csv(dir / "bench.csv");
  csv << "iter,admm_seconds,admm_objective,apg_seconds,apg_objective\n";
  const int rows = std::max(admm.iterations_run, apg.iterations_run);
  for (int i = 0; i < rows; ++i) {
    csv << i + 1 << ',';
    if (i < admm.iterations_run) {
      csv << admm.time_trace[i] << ',' << admm.objective_trace[i];
    } else {
      csv << ',';
    }
    csv << ',';
    if (i < apg.iterations_run) {
      csv << apg.time_trace[i] << ',' << apg.objective_trace[i];
    } else {
      csv << ',';
    }
    csv << '\n';
  }

  const double best = std::min(admm.objective_trace.back(), apg.objective_trace.back());
  const auto time_to_within_1pct = [&](const SolveResult& r) -> double {
    const double threshold = best * 1.01;
    for (int i = 0; i < r.iterations_run; ++i) {
      if (r.objective_trace[i] <= threshold) return r.time_trace[i];
    }
    return std::numeric_limits<double>::infinity();
  };
  const double admm_time = time_to_within_1pct(admm);
  const double apg_time = time_to_within_1pct(apg);
  write_json(json{{"best_objective", best},
                  {"admm_final_objective", admm.objective_trace.back()},
                  {"apg_final_objective", apg.objective_trace.back()},
                  {"admm_seconds_to_within_1pct", admm_time},
                  {"apg_seconds_to_within_1pct", apg_time},
                  {"winner", admm_time <= apg_time ? "admm" : "apg"}},
             dir / "summary.json");

  const SynthSpec& s = data.resolved;
  write_meta(dir, "bench", argv,
             json{{"n", s.n},
                  {"d1", s.d1},
                  {"d2", s.d2},
                  {"r0", s.r0},
                  {"r1", s.r1},
                  {"r2", s.r2},
                  {"outlier_density", s.outlier_density},
                  {"outlier_scale", s.outlier_scale},
                  {"noise_sd", s.noise_sd},
                  {"observed_fraction", s.observed_fraction},
                  {"seed", s.seed},
                  {"model", model},
                  {"admm", admm_config_to_json(solver.admm)},
                  {"apg", apg_config_to_json(solver.apg)}},
             {"bench.csv", "summary.json"});
  std::cout << "bench: admm reached within 1% of best in " << admm_time
            << " s, apg in " << apg_time << " s\n";
  return 0;
}

void add_synth_options(CLI::App* cmd, SynthSpec& s) {
  cmd->add_option("--n", s.n, "samples (columns)");
  cmd->add_option("--d1", s.d1, "rows of view 1");
  cmd->add_option("--d2", s.d2, "rows of view 2");
  cmd->add_option("--r0", s.r0, "rank of the shared block (-1 = default)");
  cmd->add_option("--r1", s.r1, "rank of view 1's block (-1 = default)");
  cmd->add_option("--r2", s.r2, "rank of view 2's block (-1 = default)");
  cmd->add_option("--outlier-density", s.outlier_density, "fraction of outlier entries");
  cmd->add_option("--outlier-scale", s.outlier_scale, "outlier range (-1 = 10*noise)");
  cmd->add_option("--noise-sd", s.noise_sd, "Gaussian noise standard deviation");
  cmd->add_option("--observed-fraction", s.observed_fraction, "fraction of observed entries");
  cmd->add_option("--seed", s.seed, "RNG seed");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Convex multi-view matrix completion with overlapping trace norms"};
  app.require_subcommand(1);

  // --- synth ---------------------------------------------------------------
  SynthSpec synth_spec;
  std::string synth_out = "synth_out";
  auto* synth = app.add_subcommand("synth", "generate a synthetic two-view problem");
  add_synth_options(synth, synth_spec);
  synth->add_option("--out", synth_out, "output directory");

  // --- solve ---------------------------------------------------------------
  std::vector<std::string> solve_views;
  std::vector<double> solve_loss_weights;
  std::string solve_model = "JLR";
  WeightOptions solve_weights;
  SolverOptions solve_solver;
  std::string solve_out = "solve_out";
  auto* solve = app.add_subcommand("solve", "fit a model to observed views");
  solve->add_option("--view", solve_views, "path to a .coo view file (repeat per view)")
      ->required();
  solve->add_option("--loss-weight", solve_loss_weights, "per-view loss weight(s)");
  solve->add_option("--model", solve_model, "I00|I0R|J00|J0R|JL0|JLR");
  solve->add_option("--solver", solve_solver.solver, "admm|apg");
  add_weight_options(solve, solve_weights);
  add_admm_options(solve, solve_solver.admm);
  add_apg_options(solve, solve_solver.apg);
  solve->add_option("--out", solve_out, "output directory");

  // --- eval ----------------------------------------------------------------
  std::string eval_pred, eval_truth, eval_set, eval_out;
  std::string eval_metric = "normalized";
  auto* eval = app.add_subcommand("eval", "score a prediction against ground truth");
  eval->add_option("--pred", eval_pred, "prediction CSV")->required();
  eval->add_option("--truth", eval_truth, "ground-truth CSV")->required();
  eval->add_option("--set", eval_set, "index-set file of entries to score")->required();
  eval->add_option("--metric", eval_metric, "normalized|label|reconstruction");
  eval->add_option("--out", eval_out, "optional JSON output path");

  // --- tune ----------------------------------------------------------------
  std::vector<std::string> tune_views;
  std::vector<double> tune_loss_weights;
  std::string tune_model = "JLR";
  std::string tune_mode = "grid";
  std::string tune_metric = "auto";
  TuneOptions tune_options;
  ParamGrid tune_grid = default_param_grid();
  int tune_budget = 200;
  std::string tune_out = "tune_out";
  auto* tune = app.add_subcommand("tune", "hyperparameter search (grid or gfo)");
  tune->add_option("--view", tune_views, "path to a .coo view file (repeat per view)")
      ->required();
  tune->add_option("--loss-weight", tune_loss_weights, "per-view loss weight(s)");
  tune->add_option("--model", tune_model, "I00|I0R|J00|J0R|JL0|JLR");
  tune->add_option("--mode", tune_mode, "grid|gfo");
  tune->add_option("--metric", tune_metric, "auto|normalized|label");
  tune->add_option("--folds", tune_options.folds, "cross-validation folds");
  tune->add_option("--seed", tune_options.seed, "fold-split seed");
  tune->add_option("--budget", tune_budget, "gfo evaluation budget");
  tune->add_option("--lambda-values", tune_grid.lambda_values, "grid lambda values");
  tune->add_option("--c-values", tune_grid.c_values, "grid c values");
  tune->add_option("--alpha-values", tune_grid.alpha_values, "grid alpha values");
  add_admm_options(tune, tune_options.solver);
  tune->add_option("--out", tune_out, "output directory");

  // --- bench ---------------------------------------------------------------
  SynthSpec bench_spec;
  bench_spec.n = 100;
  bench_spec.d1 = 50;
  bench_spec.d2 = 50;
  std::string bench_model = "JLR";
  SolverOptions bench_solver;
  std::string bench_out = "bench_out";
  auto* bench = app.add_subcommand("bench", "ADMM vs APG objective-over-time comparison");
  add_synth_options(bench, bench_spec);
  bench->add_option("--model", bench_model, "I00|I0R|J00|J0R|JL0|JLR");
  add_admm_options(bench, bench_solver.admm);
  add_apg_options(bench, bench_solver.apg);
  bench->add_option("--out", bench_out, "output directory");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << json{{"error", {{"type", "cli"}, {"message", e.what()}}}}.dump()
                << "\n";
    }
    return app.exit(e);
  }

  try {
    if (synth->parsed()) return run_synth(synth_spec, synth_out, args);
    if (solve->parsed()) {
      return run_solve(solve_views, solve_loss_weights, solve_model,
                       solve_weights, solve_solver, solve_out, args);
    }
    if (eval->parsed()) {
      return run_eval(eval_pred, eval_truth, eval_set, eval_metric, eval_out, args);
    }
    if (tune->parsed()) {
      return run_tune(tune_views, tune_loss_weights, tune_model, tune_mode,
                      tune_metric, tune_options, tune_grid, tune_budget,
                      tune_out, args);
    }
    if (bench->parsed()) {
      return run_bench(bench_spec, bench_model, bench_solver, bench_out, args);
    }
    throw std::invalid_argument("no subcommand given");
  } catch (const std::exception& e) {
    const char* type = "exception";
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
      type = "invalid_argument";
    } else if (dynamic_cast<const std::domain_error*>(&e)) {
      type = "domain_error";
    } else if (dynamic_cast<const std::runtime_error*>(&e)) {
      type = "runtime_error";
    }
    std::cerr << json{{"error", {{"type", type}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }
}

}  // namespace mvcomp
