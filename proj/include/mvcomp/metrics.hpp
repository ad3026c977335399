#pragma once

#include "mvcomp/types.hpp"

namespace mvcomp {

/// 100 * ||pred - truth||_F / ||truth||_F restricted to test_set.
/// Throws std::domain_error when test_set is empty or truth vanishes on it.
double normalized_test_error(const Matrix& pred, const Matrix& truth,
                             const IndexSet& test_set);

/// Percentage of test_set entries whose predicted sign differs from the
/// +/-1 label; sign(0) counts as +1. Throws std::domain_error on an empty
/// test set.
double label_error_percent(const Matrix& pred, const Matrix& labels,
                           const IndexSet& test_set);

/// ||pred - truth||_F / ||truth||_F restricted to the held-out feature
/// entries (a ratio, not a percentage). Throws std::domain_error when the
/// set is empty or truth vanishes on it.
double relative_reconstruction_error(const Matrix& pred, const Matrix& truth,
                                     const IndexSet& missing_set);

}  // namespace mvcomp
