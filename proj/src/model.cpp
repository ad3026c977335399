#include "mvcomp/model.hpp"

#include "mvcomp/loss.hpp"
#include "mvcomp/prox.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace mvcomp {

Matrix select_block(const Matrix& x0, int k, const std::vector<int>& dims) {
  const int total = std::accumulate(dims.begin(), dims.end(), 0);
  if (total != x0.rows()) {
    throw std::invalid_argument("select_block: dims do not sum to the stacked row count");
  }
  if (k < 0 || k >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("select_block: view index out of range");
  }
  int offset = 0;
  for (int j = 0; j < k; ++j) offset += dims[j];
  return x0.middleRows(offset, dims[k]);
}

Matrix concat_blocks(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_blocks: no parts");
  Eigen::Index rows = 0;
  const Eigen::Index cols = parts.front().cols();
  for (const auto& p : parts) {
    if (p.cols() != cols) {
      throw std::invalid_argument("concat_blocks: mismatched column counts");
    }
    rows += p.rows();
  }
  Matrix out(rows, cols);
  Eigen::Index offset = 0;
  for (const auto& p : parts) {
    out.middleRows(offset, p.rows()) = p;
    offset += p.rows();
  }
  return out;
}

Matrix assemble_prediction(const LatentBlocks& blocks, const ModelSpec& spec,
                           const std::vector<int>& dims, int k) {
  if (k < 0 || k >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("assemble_prediction: view index out of range");
  }
  Matrix pred;
  if (spec.shared) {
    if (!blocks.x0) throw std::invalid_argument("assemble_prediction: missing x0 block");
    pred = select_block(*blocks.x0, k, dims);
  }
  if (spec.specific) {
    if (static_cast<int>(blocks.xk.size()) <= k) {
      throw std::invalid_argument("assemble_prediction: missing x_k block");
    }
    if (pred.size() == 0) {
      pred = blocks.xk[k];
    } else {
      pred += blocks.xk[k];
    }
  }
  if (spec.robust) {
    if (static_cast<int>(blocks.sk.size()) <= k) {
      throw std::invalid_argument("assemble_prediction: missing s_k block");
    }
    if (pred.size() == 0) {
      pred = blocks.sk[k];
    } else {
      pred += blocks.sk[k];
    }
  }
  if (pred.size() == 0) {
    throw std::invalid_argument("assemble_prediction: spec has no active blocks");
  }
  return pred;
}

Matrix assemble_prediction(const LatentBlocks& blocks, const ModelSpec& spec,
                           const MultiViewProblem& problem, int k) {
  return assemble_prediction(blocks, spec, problem.view_rows(), k);
}

double objective(const MultiViewProblem& problem, const ModelSpec& spec,
                 const LatentBlocks& blocks) {
  const auto dims = problem.view_rows();
  const int K = problem.view_count();
  double value = 0.0;
  if (spec.shared) {
    if (!blocks.x0 || !blocks.x0->allFinite()) {
      throw std::invalid_argument("objective: x0 missing or non-finite");
    }
    value += spec.lambda0 * nuclear_norm(*blocks.x0);
  }
  for (int k = 0; k < K; ++k) {
    if (spec.specific) {
      if (static_cast<int>(blocks.xk.size()) <= k || !blocks.xk[k].allFinite()) {
        throw std::invalid_argument("objective: x_k missing or non-finite");
      }
      value += spec.lambda_k[k] * nuclear_norm(blocks.xk[k]);
    }
    if (spec.robust) {
      if (static_cast<int>(blocks.sk.size()) <= k || !blocks.sk[k].allFinite()) {
        throw std::invalid_argument("objective: s_k missing or non-finite");
      }
      value += spec.alpha_k[k] * l1_norm(blocks.sk[k]);
    }
    value += cumulative_loss(assemble_prediction(blocks, spec, dims, k),
                             problem.views[k]);
  }
  return value;
}

std::vector<std::string> validate_problem(const MultiViewProblem& problem) {
  std::vector<std::string> errors;
  if (problem.views.empty()) errors.push_back("problem has no views");
  if (problem.cols < 1) errors.push_back("sample count must be at least 1");
  for (int k = 0; k < problem.view_count(); ++k) {
    const auto& view = problem.views[k];
    const std::string tag = "view " + std::to_string(k) + ": ";
    if (view.rows < 1) errors.push_back(tag + "row count must be at least 1");
    if (view.cols != problem.cols) {
      errors.push_back(tag + "column count differs from the problem sample count");
    }
    if (view.loss_weight < 0 || !std::isfinite(view.loss_weight)) {
      errors.push_back(tag + "loss weight must be finite and nonnegative");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& e : view.entries) {
      if (e.row < 0 || e.row >= view.rows || e.col < 0 || e.col >= view.cols) {
        errors.push_back(tag + "entry (" + std::to_string(e.row) + "," +
                         std::to_string(e.col) + ") out of range");
        continue;
      }
      if (!seen.insert({e.row, e.col}).second) {
        errors.push_back(tag + "duplicate entry (" + std::to_string(e.row) + "," +
                         std::to_string(e.col) + ")");
      }
      if (!std::isfinite(e.value)) {
        errors.push_back(tag + "non-finite value at (" + std::to_string(e.row) + "," +
                         std::to_string(e.col) + ")");
      }
      if (view.loss == LossKind::kLogistic && e.value != 1.0 && e.value != -1.0) {
        errors.push_back(tag + "non-binary logistic target at (" + std::to_string(e.row) +
                         "," + std::to_string(e.col) + ")");
      }
    }
  }
  return errors;
}

void require_valid(const MultiViewProblem& problem, const ModelSpec& spec) {
  auto errors = validate_problem(problem);
  const int K = problem.view_count();
  if (!spec.shared && !spec.specific) {
    errors.push_back("spec: at least one of shared/specific must be on");
  }
  if (spec.shared && (spec.lambda0 < 0 || !std::isfinite(spec.lambda0))) {
    errors.push_back("spec: lambda0 must be finite and nonnegative");
  }
  if (spec.specific) {
    if (static_cast<int>(spec.lambda_k.size()) != K) {
      errors.push_back("spec: lambda_k must have one weight per view");
    } else {
      for (double w : spec.lambda_k) {
        if (w < 0 || !std::isfinite(w)) {
          errors.push_back("spec: lambda_k weights must be finite and nonnegative");
          break;
        }
      }
    }
  }
  if (spec.robust) {
    if (static_cast<int>(spec.alpha_k.size()) != K) {
      errors.push_back("spec: alpha_k must have one weight per view");
    } else {
      for (double w : spec.alpha_k) {
        if (w < 0 || !std::isfinite(w)) {
          errors.push_back("spec: alpha_k weights must be finite and nonnegative");
          break;
        }
      }
    }
  }
  if (!errors.empty()) {
    std::string message = "invalid problem/spec:";
    for (const auto& e : errors) message += "\n  " + e;
    throw std::invalid_argument(message);
  }
}

ModelSpec spec_for_variant(const std::string& name, int view_count) {
  ModelSpec spec;
  if (name == "I00") {
    spec.shared = false, spec.specific = true, spec.robust = false;
  } else if (name == "I0R") {
    spec.shared = false, spec.specific = true, spec.robust = true;
  } else if (name == "J00") {
    spec.shared = true, spec.specific = false, spec.robust = false;
  } else if (name == "J0R") {
    spec.shared = true, spec.specific = false, spec.robust = true;
  } else if (name == "JL0") {
    spec.shared = true, spec.specific = true, spec.robust = false;
  } else if (name == "JLR") {
    spec.shared = true, spec.specific = true, spec.robust = true;
  } else {
    throw std::invalid_argument("unknown model variant: " + name);
  }
  spec.lambda0 = 1.0;
  spec.lambda_k.assign(view_count, 1.0);
  spec.alpha_k.assign(view_count, 1.0);
  return spec;
}

std::string variant_name(const ModelSpec& spec) {
  std::string name;
  name += spec.shared ? 'J' : 'I';
  name += (spec.shared && spec.specific) ? 'L' : '0';
  name += spec.robust ? 'R' : '0';
  return name;
}

LatentBlocks zero_blocks(const MultiViewProblem& problem, const ModelSpec& spec) {
  LatentBlocks blocks;
  const int K = problem.view_count();
  if (spec.shared) {
    blocks.x0 = Matrix::Zero(problem.total_rows(), problem.cols);
  }
  if (spec.specific) {
    blocks.xk.reserve(K);
    for (int k = 0; k < K; ++k) {
      blocks.xk.push_back(Matrix::Zero(problem.views[k].rows, problem.cols));
    }
  }
  if (spec.robust) {
    blocks.sk.reserve(K);
    for (int k = 0; k < K; ++k) {
      blocks.sk.push_back(Matrix::Zero(problem.views[k].rows, problem.cols));
    }
  }
  return blocks;
}

}  // namespace mvcomp
