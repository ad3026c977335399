#include "mvcomp/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    root_ = fs::temp_directory_path() /
            ("mvcomp_cli_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(root_);
  }
  ~TempDir() { fs::remove_all(root_); }
  std::string path(const std::string& name) const { return (root_ / name).string(); }

 private:
  fs::path root_;
};

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mvcomp");
  return mvcomp::run(args);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json read_json(const std::string& path) { return json::parse(slurp(path)); }

/// Tiny synthetic instance shared by the pipeline tests.
void make_synth(const TempDir& dir, const std::string& out) {
  const int rc = run_cli({"synth", "--n", "12", "--d1", "6", "--d2", "6",
                          "--seed", "5", "--out", dir.path(out)});
  REQUIRE(rc == 0);
}

}  // namespace

TEST_CASE("synth writes the documented artifact set") {
  TempDir dir;
  make_synth(dir, "synth");
  for (const char* name :
       {"view1.coo", "view2.coo", "full_view1.csv", "full_view2.csv",
        "truth_x0.csv", "truth_x1.csv", "truth_x2.csv", "truth_s1.csv",
        "truth_s2.csv", "train1.idx", "test1.idx", "train2.idx", "test2.idx",
        "meta.json"}) {
    CHECK(fs::exists(fs::path(dir.path("synth")) / name));
  }

  const json meta = read_json(dir.path("synth") + "/meta.json");
  CHECK(meta["command"] == "synth");
  CHECK(meta["config"]["n"] == 12);
  CHECK(meta["config"]["seed"] == 5);
  // Sentinel fields are recorded in resolved form.
  CHECK(meta["config"]["r0"].get<int>() >= 1);
  CHECK(meta["config"]["outlier_scale"].get<double>() > 0.0);
  CHECK(meta["argv"].size() >= 2);
}

TEST_CASE("synth, solve, and eval compose into a pipeline") {
  TempDir dir;
  make_synth(dir, "synth");

  const int solved = run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                              "--view", dir.path("synth") + "/view2.coo",
                              "--model", "JLR", "--lambda0", "2", "--lambda", "2",
                              "--alpha", "0.5", "--out", dir.path("fit")});
  REQUIRE(solved == 0);
  for (const char* name : {"x0.csv", "x1.csv", "x2.csv", "s1.csv", "s2.csv",
                           "prediction1.csv", "prediction2.csv", "trace.csv",
                           "timing.csv", "meta.json"}) {
    CHECK(fs::exists(fs::path(dir.path("fit")) / name));
  }
  const json meta = read_json(dir.path("fit") + "/meta.json");
  CHECK(meta["config"]["model"] == "JLR");
  CHECK(meta["config"]["solver"] == "admm");
  CHECK(meta["config"]["spec"]["lambda0"] == 2.0);
  CHECK(meta["config"]["iterations_run"].get<int>() >= 1);

  const int scored = run_cli({"eval", "--pred", dir.path("fit") + "/prediction1.csv",
                              "--truth", dir.path("synth") + "/full_view1.csv",
                              "--set", dir.path("synth") + "/test1.idx",
                              "--metric", "normalized",
                              "--out", dir.path("eval.json")});
  REQUIRE(scored == 0);
  const json eval = read_json(dir.path("eval.json"));
  CHECK(eval["metric"] == "normalized");
  const double value = eval["value"].get<double>();
  CHECK(value > 0.0);
  CHECK(value < 200.0);
}

TEST_CASE("solve honors the model flags in its outputs") {
  TempDir dir;
  make_synth(dir, "synth");
  const int rc = run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                          "--view", dir.path("synth") + "/view2.coo",
                          "--model", "J00", "--out", dir.path("fit")});
  REQUIRE(rc == 0);
  CHECK(fs::exists(dir.path("fit") + "/x0.csv"));
  CHECK_FALSE(fs::exists(dir.path("fit") + "/x1.csv"));
  CHECK_FALSE(fs::exists(dir.path("fit") + "/s1.csv"));
  CHECK(fs::exists(dir.path("fit") + "/prediction2.csv"));
}

TEST_CASE("solve supports the accelerated gradient baseline") {
  TempDir dir;
  make_synth(dir, "synth");
  const int rc = run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                          "--view", dir.path("synth") + "/view2.coo",
                          "--solver", "apg", "--max-iters", "120",
                          "--out", dir.path("fit")});
  REQUIRE(rc == 0);
  const json meta = read_json(dir.path("fit") + "/meta.json");
  CHECK(meta["config"]["solver"] == "apg");

  // APG's recorded objective column is non-increasing.
  std::istringstream trace(slurp(dir.path("fit") + "/trace.csv"));
  std::string line;
  std::getline(trace, line);  // header
  double prev = std::numeric_limits<double>::infinity();
  int rows = 0;
  while (std::getline(trace, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const double objective = std::stod(line.substr(first + 1, second - first - 1));
    CHECK(objective <= prev);
    prev = objective;
    ++rows;
  }
  CHECK(rows == meta["config"]["iterations_run"].get<int>());
}

TEST_CASE("repeated solves are byte-identical") {
  TempDir dir;
  make_synth(dir, "synth");
  for (const char* out : {"fit_a", "fit_b"}) {
    const int rc = run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                            "--view", dir.path("synth") + "/view2.coo",
                            "--out", dir.path(out)});
    REQUIRE(rc == 0);
  }
  CHECK(slurp(dir.path("fit_a") + "/trace.csv") ==
        slurp(dir.path("fit_b") + "/trace.csv"));
  CHECK(slurp(dir.path("fit_a") + "/x0.csv") ==
        slurp(dir.path("fit_b") + "/x0.csv"));
  CHECK(slurp(dir.path("fit_a") + "/prediction1.csv") ==
        slurp(dir.path("fit_b") + "/prediction1.csv"));
}

TEST_CASE("tune in grid mode writes the full score table") {
  TempDir dir;
  make_synth(dir, "synth");
  const int rc = run_cli({"tune", "--view", dir.path("synth") + "/view1.coo",
                          "--view", dir.path("synth") + "/view2.coo",
                          "--model", "JLR", "--mode", "grid",
                          "--lambda-values", "1", "--lambda-values", "10",
                          "--c-values", "0.5",
                          "--alpha-values", "0.5", "--alpha-values", "1",
                          "--folds", "2", "--outer-iters", "2",
                          "--inner-iters", "2", "--out", dir.path("tuned")});
  REQUIRE(rc == 0);

  std::istringstream table(slurp(dir.path("tuned") + "/score_table.csv"));
  std::string line;
  std::getline(table, line);
  CHECK(line == "lambda,c,alpha1,alpha2,score,failed");
  int rows = 0;
  while (std::getline(table, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2 * 1 * 2 * 2);  // lambda * c * alpha^2

  const json best = read_json(dir.path("tuned") + "/best.json");
  CHECK(best["cells"] == 8);
  CHECK(best["alpha"].size() == 2);
  CHECK(std::isfinite(best["score"].get<double>()));
}

TEST_CASE("tune in gfo mode logs every evaluation and respects the budget") {
  TempDir dir;
  make_synth(dir, "synth");
  const int rc = run_cli({"tune", "--view", dir.path("synth") + "/view1.coo",
                          "--view", dir.path("synth") + "/view2.coo",
                          "--model", "JL0", "--mode", "gfo", "--budget", "20",
                          "--folds", "2", "--outer-iters", "2",
                          "--inner-iters", "2", "--out", dir.path("tuned")});
  REQUIRE(rc == 0);

  std::istringstream log(slurp(dir.path("tuned") + "/eval_log.csv"));
  std::string line;
  std::getline(log, line);
  CHECK(line == "log10_lambda,c,score");  // non-robust: no alpha axes
  int rows = 0;
  while (std::getline(log, line))
    if (!line.empty()) ++rows;
  CHECK(rows <= 20);
  CHECK(rows >= 3);  // at least the initial simplex

  const json best = read_json(dir.path("tuned") + "/best.json");
  CHECK(best["evaluations"].get<int>() == rows);
  const double lambda = best["lambda"].get<double>();
  CHECK(lambda >= 0.01);
  CHECK(lambda <= 100.0);
  const double c = best["c"].get<double>();
  CHECK(c >= 0.1);
  CHECK(c <= 0.9);
}

TEST_CASE("bench compares the two solvers on one instance") {
  TempDir dir;
  const int rc = run_cli({"bench", "--n", "24", "--d1", "12", "--d2", "12",
                          "--seed", "3", "--outer-iters", "8",
                          "--max-iters", "60", "--out", dir.path("bench")});
  REQUIRE(rc == 0);

  const json summary = read_json(dir.path("bench") + "/summary.json");
  CHECK(summary.contains("best_objective"));
  CHECK(summary.contains("admm_seconds_to_within_1pct"));
  CHECK(summary.contains("apg_seconds_to_within_1pct"));
  const std::string winner = summary["winner"].get<std::string>();
  CHECK((winner == "admm" || winner == "apg"));

  // The ADMM objective column settles into monotone decrease after burn-in.
  std::istringstream csv(slurp(dir.path("bench") + "/bench.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "iter,admm_seconds,admm_objective,apg_seconds,apg_objective");
  std::vector<double> admm_obj;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() >= 3 && !cells[2].empty()) admm_obj.push_back(std::stod(cells[2]));
  }
  REQUIRE(admm_obj.size() >= 4);
  for (std::size_t t = 3; t + 1 < admm_obj.size(); ++t) {
    CHECK(admm_obj[t + 1] <= admm_obj[t] * (1.0 + 1e-6) + 1e-9);
  }
}

TEST_CASE("cli failure modes return nonzero without throwing") {
  TempDir dir;
  CHECK(run_cli({"frobnicate"}) != 0);
  CHECK(run_cli({"solve", "--no-such-flag"}) != 0);
  CHECK(run_cli({"solve"}) != 0);  // missing required --view
  CHECK(run_cli({"eval", "--pred", dir.path("missing.csv"), "--truth",
                 dir.path("missing.csv"), "--set", dir.path("missing.idx")}) != 0);

  make_synth(dir, "synth");
  CHECK(run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                 "--solver", "nope", "--out", dir.path("fit")}) != 0);
  CHECK(run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                 "--model", "XYZ", "--out", dir.path("fit")}) != 0);
  // --tuned-lambda without --c is a contract violation.
  CHECK(run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                 "--tuned-lambda", "2", "--out", dir.path("fit")}) != 0);
  CHECK(run_cli({"tune", "--view", dir.path("synth") + "/view1.coo",
                 "--mode", "nope", "--out", dir.path("tuned")}) != 0);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"solve", "--help"}) == 0);
}

TEST_CASE("reparameterized weights reach the solver") {
  TempDir dir;
  make_synth(dir, "synth");
  const int rc = run_cli({"solve", "--view", dir.path("synth") + "/view1.coo",
                          "--view", dir.path("synth") + "/view2.coo",
                          "--tuned-lambda", "2", "--c", "0.5",
                          "--out", dir.path("fit")});
  REQUIRE(rc == 0);
  const json meta = read_json(dir.path("fit") + "/meta.json");
  CHECK(meta["config"]["spec"]["lambda0"].get<double>() == doctest::Approx(4.0));
  CHECK(meta["config"]["spec"]["lambda_k"][0].get<double>() == doctest::Approx(4.0));
}
