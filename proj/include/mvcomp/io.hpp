#pragma once

#include "mvcomp/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mvcomp {

/// Sparse view file: header `d n loss` (loss in {squared, logistic})
/// followed by `row col value` lines, 0-based, whitespace-separated, LF.
/// Throws std::runtime_error with `path:line:` context on parse errors,
/// out-of-range indices, duplicates, or non-binary logistic targets.
ViewData load_coo(const std::string& path);

/// Inverse of load_coo; values at 17 significant digits.
void save_coo(const ViewData& view, const std::string& path);

/// Rectangular numeric CSV (`.` decimal, LF). Ragged rows or non-numeric
/// cells throw std::runtime_error naming the row.
Matrix load_dense_csv(const std::string& path);

/// Inverse of load_dense_csv; %.17g cells so round trips are value-exact.
void write_dense_csv(const Matrix& m, const std::string& path);

/// Index-set file: `row col` lines, 0-based.
IndexSet load_index_set(const std::string& path);
void save_index_set(const IndexSet& set, const std::string& path);

/// Two-view multi-label instance built from dense feature/label CSVs.
struct MultilabelData {
  MultiViewProblem problem;          ///< view 1 squared, view 2 logistic
  std::vector<Matrix> full_views;    ///< dense features and +/-1 labels
  std::vector<IndexSet> train_sets;  ///< observed masks per view
  std::vector<IndexSet> test_sets;   ///< held-out complements
  bool labels_remapped = false;      ///< inputs were 0/1 and got mapped to -1/+1
};

/// Load features (d1 x n) and labels (d2 x n), remap 0/1 labels to -1/+1
/// when needed, then observe a fraction pi of each view's entries
/// (masks drawn per view from `seed`). Throws std::invalid_argument on a
/// sample-count mismatch or labels that are not binary even after remap.
MultilabelData load_multilabel(const std::string& features_path,
                               const std::string& labels_path, double pi,
                               std::uint64_t seed);

}  // namespace mvcomp
