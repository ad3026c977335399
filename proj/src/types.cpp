#include "mvcomp/types.hpp"

#include <numeric>
#include <stdexcept>

namespace mvcomp {

std::string to_string(LossKind kind) {
  return kind == LossKind::kSquared ? "squared" : "logistic";
}

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "squared") return LossKind::kSquared;
  if (name == "logistic") return LossKind::kLogistic;
  throw std::invalid_argument("unknown loss kind: " + name);
}

std::vector<int> MultiViewProblem::view_rows() const {
  std::vector<int> dims;
  dims.reserve(views.size());
  for (const auto& v : views) dims.push_back(v.rows);
  return dims;
}

int MultiViewProblem::total_rows() const {
  int total = 0;
  for (const auto& v : views) total += v.rows;
  return total;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 on (seed + odd stream offset)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mvcomp
