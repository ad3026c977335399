#include "mvcomp/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mvcomp {

namespace {

void check_entry(const Matrix& m, const MatrixIndex& idx, const char* what) {
  if (idx.row < 0 || idx.row >= m.rows() || idx.col < 0 || idx.col >= m.cols()) {
    throw std::invalid_argument(std::string(what) + ": index out of range");
  }
}

/// Squared Frobenius norms of (pred - truth) and truth over the set.
std::pair<double, double> restricted_norms(const Matrix& pred,
                                           const Matrix& truth,
                                           const IndexSet& set,
                                           const char* what) {
  if (pred.rows() != truth.rows() || pred.cols() != truth.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
  double diff2 = 0.0, ref2 = 0.0;
  for (const auto& idx : set) {
    check_entry(truth, idx, what);
    const double t = truth(idx.row, idx.col);
    const double d = pred(idx.row, idx.col) - t;
    diff2 += d * d;
    ref2 += t * t;
  }
  return {diff2, ref2};
}

}  // namespace

double normalized_test_error(const Matrix& pred, const Matrix& truth,
                             const IndexSet& test_set) {
  if (test_set.empty()) {
    throw std::domain_error("normalized_test_error: empty test set");
  }
  auto [diff2, ref2] = restricted_norms(pred, truth, test_set, "normalized_test_error");
  if (ref2 == 0.0) {
    throw std::domain_error("normalized_test_error: truth vanishes on the test set");
  }
  return 100.0 * std::sqrt(diff2 / ref2);
}

double label_error_percent(const Matrix& pred, const Matrix& labels,
                           const IndexSet& test_set) {
  if (test_set.empty()) {
    throw std::domain_error("label_error_percent: empty test set");
  }
  if (pred.rows() != labels.rows() || pred.cols() != labels.cols()) {
    throw std::invalid_argument("label_error_percent: shape mismatch");
  }
  int wrong = 0;
  for (const auto& idx : test_set) {
    check_entry(labels, idx, "label_error_percent");
    const double y = labels(idx.row, idx.col);
    if (y != 1.0 && y != -1.0) {
      throw std::invalid_argument("label_error_percent: labels must be +/-1 on the test set");
    }
    const double predicted = pred(idx.row, idx.col) >= 0.0 ? 1.0 : -1.0;
    if (predicted != y) ++wrong;
  }
  return 100.0 * wrong / static_cast<double>(test_set.size());
}

double relative_reconstruction_error(const Matrix& pred, const Matrix& truth,
                                     const IndexSet& missing_set) {
  if (missing_set.empty()) {
    throw std::domain_error("relative_reconstruction_error: empty index set");
  }
  auto [diff2, ref2] =
      restricted_norms(pred, truth, missing_set, "relative_reconstruction_error");
  if (ref2 == 0.0) {
    throw std::domain_error(
        "relative_reconstruction_error: truth vanishes on the index set");
  }
  return std::sqrt(diff2 / ref2);
}

}  // namespace mvcomp
