#include "mvcomp/io.hpp"

#include "mvcomp/metrics.hpp"
#include "mvcomp/model.hpp"

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

using mvcomp::IndexSet;
using mvcomp::LossKind;
using mvcomp::Matrix;
using mvcomp::ViewData;

namespace {

namespace fs = std::filesystem;

/// Fresh per-test scratch directory under the system temp dir.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    root_ = fs::temp_directory_path() /
            ("mvcomp_io_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(root_);
  }
  ~TempDir() { fs::remove_all(root_); }
  std::string path(const std::string& name) const { return (root_ / name).string(); }

 private:
  fs::path root_;
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

TEST_CASE("load_coo parses a well-formed sparse view") {
  TempDir dir;
  const auto path = dir.path("view.coo");
  write_file(path, "2 2 squared\n0 0 1.5\n1 1 -2\n");
  const ViewData view = mvcomp::load_coo(path);
  CHECK(view.rows == 2);
  CHECK(view.cols == 2);
  CHECK(view.loss == LossKind::kSquared);
  REQUIRE(view.entries.size() == 2);
  CHECK(view.entries[0].row == 0);
  CHECK(view.entries[0].value == doctest::Approx(1.5));
  CHECK(view.entries[1].value == doctest::Approx(-2.0));
}

TEST_CASE("load_coo accepts an empty body and blank lines") {
  TempDir dir;
  const auto path = dir.path("empty.coo");
  write_file(path, "3 4 logistic\n");
  const ViewData view = mvcomp::load_coo(path);
  CHECK(view.rows == 3);
  CHECK(view.cols == 4);
  CHECK(view.loss == LossKind::kLogistic);
  CHECK(view.entries.empty());

  write_file(path, "2 2 squared\n\n0 1 3\n\n");
  CHECK(mvcomp::load_coo(path).entries.size() == 1);
}

TEST_CASE("load_coo errors carry the path and line number") {
  TempDir dir;
  const auto path = dir.path("bad.coo");

  auto expect_error_with = [&](const std::string& body, const std::string& needle) {
    write_file(path, body);
    try {
      mvcomp::load_coo(path);
      FAIL("expected a parse error for body: " << body);
    } catch (const std::runtime_error& e) {
      const std::string what = e.what();
      CHECK(what.find(path) != std::string::npos);
      CHECK(what.find(needle) != std::string::npos);
    }
  };

  expect_error_with("2 2 huber\n", ":1:");            // unknown loss
  expect_error_with("2\n", ":1:");                    // truncated header
  expect_error_with("2 2 squared\n5 0 1\n", ":2:");   // row out of range
  expect_error_with("2 2 squared\n0 9 1\n", ":2:");   // col out of range
  expect_error_with("2 2 squared\n0 0 xyz\n", ":2:"); // non-numeric value
  expect_error_with("2 2 squared\n0 0 1\n0 0 2\n", ":3:");  // duplicate
  expect_error_with("2 2 squared\n0 0 1 9\n", ":2:"); // trailing tokens
  expect_error_with("2 2 logistic\n0 0 0.5\n", ":2:"); // non-binary target
  expect_error_with("2 2 squared\n0 0 inf\n", ":2:"); // non-finite value

  CHECK_THROWS_AS(mvcomp::load_coo(dir.path("missing.coo")), std::runtime_error);
}

TEST_CASE("coo round trip preserves entries exactly") {
  TempDir dir;
  ViewData view;
  view.rows = 5;
  view.cols = 7;
  view.loss = LossKind::kSquared;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 5; ++i) view.entries.push_back({i, (i * 3) % 7, gauss(rng)});
  view.entries.push_back({4, 6, 1.0 / 3.0});
  view.entries.push_back({0, 6, 1e-300});

  const auto path = dir.path("roundtrip.coo");
  mvcomp::save_coo(view, path);
  const ViewData back = mvcomp::load_coo(path);
  CHECK(back.rows == view.rows);
  CHECK(back.cols == view.cols);
  CHECK(back.loss == view.loss);
  REQUIRE(back.entries.size() == view.entries.size());
  for (std::size_t i = 0; i < view.entries.size(); ++i) {
    CHECK(back.entries[i].row == view.entries[i].row);
    CHECK(back.entries[i].col == view.entries[i].col);
    CHECK(back.entries[i].value == view.entries[i].value);  // bit-exact
  }
}

TEST_CASE("dense csv round trip is value-exact") {
  TempDir dir;
  Matrix m(3, 4);
  m << 1.0 / 3.0, -0.0, 1e-300, 2.5,
       -7.25, 3.14159265358979312, 0.0, -1e17,
       42.0, 1e-17, -2.0 / 3.0, 9.0;
  const auto path = dir.path("m.csv");
  mvcomp::write_dense_csv(m, path);
  const Matrix back = mvcomp::load_dense_csv(path);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 3; ++i) CHECK(back(i, j) == m(i, j));

  // 1x1 corner case.
  mvcomp::write_dense_csv(Matrix::Constant(1, 1, -5.5), path);
  const Matrix one = mvcomp::load_dense_csv(path);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == -5.5);
}

TEST_CASE("dense csv loader rejects ragged and non-numeric input") {
  TempDir dir;
  const auto path = dir.path("bad.csv");
  write_file(path, "1,2,3\n4,5\n");
  try {
    mvcomp::load_dense_csv(path);
    FAIL("expected ragged-row error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }

  write_file(path, "1,2\n3,abc\n");
  CHECK_THROWS_AS(mvcomp::load_dense_csv(path), std::runtime_error);

  // Empty file: a 0x0 matrix, not an error.
  write_file(path, "");
  const Matrix empty = mvcomp::load_dense_csv(path);
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 0);
}

TEST_CASE("index set round trip") {
  TempDir dir;
  const IndexSet set = {{0, 0}, {3, 1}, {2, 7}};
  const auto path = dir.path("set.idx");
  mvcomp::save_index_set(set, path);
  const IndexSet back = mvcomp::load_index_set(path);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(back[i].row == set[i].row);
    CHECK(back[i].col == set[i].col);
  }

  write_file(path, "1 2\n3\n");
  CHECK_THROWS_AS(mvcomp::load_index_set(path), std::runtime_error);
}

TEST_CASE("load_multilabel remaps 0/1 labels and splits both views") {
  TempDir dir;
  // 3 features x 4 samples; 2 labels x 4 samples in 0/1 coding.
  write_file(dir.path("x.csv"), "1,2,3,4\n5,6,7,8\n9,10,11,12\n");
  write_file(dir.path("y.csv"), "0,1,0,1\n1,1,0,0\n");

  const auto data = mvcomp::load_multilabel(dir.path("x.csv"), dir.path("y.csv"),
                                            /*pi=*/0.5, /*seed=*/7);
  CHECK(data.labels_remapped);
  CHECK(data.problem.view_count() == 2);
  CHECK(data.problem.views[0].loss == LossKind::kSquared);
  CHECK(data.problem.views[1].loss == LossKind::kLogistic);
  CHECK(data.problem.cols == 4);
  CHECK(data.full_views[0].rows() == 3);
  CHECK(data.full_views[1](0, 0) == doctest::Approx(-1.0));  // remapped 0
  CHECK(data.full_views[1](0, 1) == doctest::Approx(1.0));

  // pi = 0.5: half of each view observed, the rest held out.
  CHECK(data.train_sets[0].size() == 6);
  CHECK(data.test_sets[0].size() == 6);
  CHECK(data.train_sets[1].size() == 4);
  CHECK(data.test_sets[1].size() == 4);
  CHECK(data.problem.views[0].entries.size() == 6);
  CHECK(mvcomp::validate_problem(data.problem).empty());

  // Native -1/+1 labels pass through without the remap flag.
  write_file(dir.path("y2.csv"), "-1,1,-1,1\n1,1,-1,-1\n");
  const auto native = mvcomp::load_multilabel(dir.path("x.csv"), dir.path("y2.csv"),
                                              0.5, 7);
  CHECK_FALSE(native.labels_remapped);
}

TEST_CASE("load_multilabel with full observation leaves nothing held out") {
  TempDir dir;
  write_file(dir.path("x.csv"), "1,2\n3,4\n");
  write_file(dir.path("y.csv"), "0,1\n");
  const auto data =
      mvcomp::load_multilabel(dir.path("x.csv"), dir.path("y.csv"), 1.0, 1);
  CHECK(data.test_sets[0].empty());
  CHECK(data.test_sets[1].empty());
  // Scoring an empty held-out set is undefined.
  CHECK_THROWS_AS(mvcomp::label_error_percent(data.full_views[1],
                                              data.full_views[1],
                                              data.test_sets[1]),
                  std::domain_error);
}

TEST_CASE("load_multilabel input validation") {
  TempDir dir;
  write_file(dir.path("x.csv"), "1,2,3\n4,5,6\n");
  write_file(dir.path("y_short.csv"), "0,1\n");
  CHECK_THROWS_AS(
      mvcomp::load_multilabel(dir.path("x.csv"), dir.path("y_short.csv"), 0.5, 0),
      std::invalid_argument);

  write_file(dir.path("y_bad.csv"), "0,1,2\n");
  CHECK_THROWS_AS(
      mvcomp::load_multilabel(dir.path("x.csv"), dir.path("y_bad.csv"), 0.5, 0),
      std::invalid_argument);

  write_file(dir.path("y.csv"), "0,1,1\n");
  CHECK_THROWS_AS(mvcomp::load_multilabel(dir.path("x.csv"), dir.path("y.csv"),
                                          0.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(mvcomp::load_multilabel(dir.path("x.csv"), dir.path("y.csv"),
                                          1.5, 0),
                  std::invalid_argument);

  write_file(dir.path("x_empty.csv"), "");
  CHECK_THROWS_AS(
      mvcomp::load_multilabel(dir.path("x_empty.csv"), dir.path("y.csv"), 0.5, 0),
      std::invalid_argument);
}
