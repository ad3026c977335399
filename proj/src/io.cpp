#include "mvcomp/io.hpp"

#include "mvcomp/datagen.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mvcomp {

namespace {

[[noreturn]] void fail_at(const std::string& path, int line,
                          const std::string& message) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

double parse_double(const std::string& cell, bool& ok) {
  const auto begin = cell.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    ok = false;
    return 0.0;
  }
  const auto end = cell.find_last_not_of(" \t\r") + 1;
  double value = 0.0;
  const auto result =
      std::from_chars(cell.data() + begin, cell.data() + end, value);
  ok = result.ec == std::errc() && result.ptr == cell.data() + end;
  return value;
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

}  // namespace

ViewData load_coo(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  int line_no = 0;

  ViewData view;
  std::string loss_word;
  // Header: first non-blank line.
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream header(line);
    if (!(header >> view.rows >> view.cols >> loss_word)) {
      fail_at(path, line_no, "expected header `d n loss`");
    }
    std::string extra;
    if (header >> extra) fail_at(path, line_no, "trailing tokens after header");
    break;
  }
  if (loss_word.empty()) fail_at(path, line_no, "missing header `d n loss`");
  if (view.rows < 1 || view.cols < 1) {
    fail_at(path, line_no, "dimensions must be positive");
  }
  try {
    view.loss = loss_kind_from_string(loss_word);
  } catch (const std::invalid_argument& e) {
    fail_at(path, line_no, e.what());
  }

  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream row(line);
    Observation obs{};
    if (!(row >> obs.row >> obs.col >> obs.value)) {
      fail_at(path, line_no, "expected `row col value`");
    }
    std::string extra;
    if (row >> extra) fail_at(path, line_no, "trailing tokens after entry");
    if (obs.row < 0 || obs.row >= view.rows || obs.col < 0 ||
        obs.col >= view.cols) {
      fail_at(path, line_no, "index out of range");
    }
    if (!seen.insert({obs.row, obs.col}).second) {
      fail_at(path, line_no, "duplicate entry");
    }
    if (!std::isfinite(obs.value)) fail_at(path, line_no, "non-finite value");
    if (view.loss == LossKind::kLogistic && obs.value != 1.0 &&
        obs.value != -1.0) {
      fail_at(path, line_no, "logistic target must be -1 or +1");
    }
    view.entries.push_back(obs);
  }
  return view;
}

void save_coo(const ViewData& view, const std::string& path) {
  auto out = open_output(path);
  out << view.rows << ' ' << view.cols << ' ' << to_string(view.loss) << '\n';
  for (const auto& e : view.entries) {
    out << e.row << ' ' << e.col << ' ' << format_double(e.value) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Matrix load_dense_csv(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::vector<double> row;
    std::size_t begin = 0;
    while (true) {
      const std::size_t comma = line.find(',', begin);
      const std::string cell = line.substr(
          begin, comma == std::string::npos ? std::string::npos : comma - begin);
      bool ok = false;
      const double value = parse_double(cell, ok);
      if (!ok) fail_at(path, line_no, "non-numeric cell '" + cell + "'");
      row.push_back(value);
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail_at(path, line_no, "ragged row: expected " +
                                 std::to_string(rows.front().size()) +
                                 " cells, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void write_dense_csv(const Matrix& m, const std::string& path) {
  auto out = open_output(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

IndexSet load_index_set(const std::string& path) {
  auto in = open_input(path);
  IndexSet set;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream row(line);
    MatrixIndex idx{};
    if (!(row >> idx.row >> idx.col)) fail_at(path, line_no, "expected `row col`");
    std::string extra;
    if (row >> extra) fail_at(path, line_no, "trailing tokens");
    if (idx.row < 0 || idx.col < 0) fail_at(path, line_no, "negative index");
    set.push_back(idx);
  }
  return set;
}

void save_index_set(const IndexSet& set, const std::string& path) {
  auto out = open_output(path);
  for (const auto& idx : set) out << idx.row << ' ' << idx.col << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

MultilabelData load_multilabel(const std::string& features_path,
                               const std::string& labels_path, double pi,
                               std::uint64_t seed) {
  if (pi <= 0 || pi > 1) {
    throw std::invalid_argument("load_multilabel: pi must lie in (0,1]");
  }
  MultilabelData data;
  Matrix features = load_dense_csv(features_path);
  Matrix labels = load_dense_csv(labels_path);
  if (features.cols() != labels.cols()) {
    throw std::invalid_argument(
        "load_multilabel: feature and label sample counts differ (" +
        std::to_string(features.cols()) + " vs " + std::to_string(labels.cols()) +
        ")");
  }
  if (features.size() == 0 || labels.size() == 0) {
    throw std::invalid_argument("load_multilabel: empty view");
  }

  bool all_pm1 = true, all_01 = true;
  for (Eigen::Index j = 0; j < labels.cols(); ++j) {
    for (Eigen::Index i = 0; i < labels.rows(); ++i) {
      const double y = labels(i, j);
      all_pm1 = all_pm1 && (y == 1.0 || y == -1.0);
      all_01 = all_01 && (y == 0.0 || y == 1.0);
    }
  }
  if (!all_pm1 && all_01) {
    labels = (2.0 * labels.array() - 1.0).matrix();
    data.labels_remapped = true;
  } else if (!all_pm1) {
    throw std::invalid_argument(
        "load_multilabel: labels must be -1/+1 (or 0/1, remapped)");
  }

  data.full_views = {features, labels};
  data.problem.cols = static_cast<int>(features.cols());
  const LossKind losses[2] = {LossKind::kSquared, LossKind::kLogistic};
  for (int v = 0; v < 2; ++v) {
    const Matrix& full = data.full_views[v];
    const int d = static_cast<int>(full.rows());
    IndexSet train = sample_mask(d, data.problem.cols, pi, mix_seed(seed, v));
    data.test_sets.push_back(mask_complement(d, data.problem.cols, train));

    ViewData view;
    view.rows = d;
    view.cols = data.problem.cols;
    view.loss = losses[v];
    view.entries.reserve(train.size());
    for (const auto& idx : train) {
      view.entries.push_back({idx.row, idx.col, full(idx.row, idx.col)});
    }
    data.problem.views.push_back(std::move(view));
    data.train_sets.push_back(std::move(train));
  }
  return data;
}

}  // namespace mvcomp
