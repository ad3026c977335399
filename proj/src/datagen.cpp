#include "mvcomp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mvcomp {

namespace {

int default_rank(int d, int n) {
  return static_cast<int>(std::ceil(0.05 * std::min(d, n)));
}

void check_dims(int d, int n) {
  if (d < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
}

/// floor(fraction * d * n) random distinct flat indices in [0, d*n).
std::vector<int> sample_flat(int d, int n, int count, std::uint64_t seed) {
  std::vector<int> population(static_cast<std::size_t>(d) * n);
  std::iota(population.begin(), population.end(), 0);
  std::vector<int> chosen;
  chosen.reserve(count);
  std::mt19937_64 rng(seed);
  std::sample(population.begin(), population.end(), std::back_inserter(chosen),
              count, rng);
  return chosen;
}

}  // namespace

SynthSpec SynthSpec::resolve() const {
  SynthSpec out = *this;
  if (out.r0 < 0) out.r0 = default_rank(out.d1 + out.d2, out.n);
  if (out.r1 < 0) out.r1 = default_rank(out.d1, out.n);
  if (out.r2 < 0) out.r2 = default_rank(out.d2, out.n);
  if (out.outlier_scale < 0) out.outlier_scale = 10.0 * out.noise_sd;
  return out;
}

Matrix gen_low_rank(int d, int n, int r, std::uint64_t seed) {
  check_dims(d, n);
  if (r < 0 || r > std::min(d, n)) {
    throw std::invalid_argument("gen_low_rank: rank must lie in [0, min(d,n)]");
  }
  if (r == 0) return Matrix::Zero(d, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix u(d, r), v(n, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < d; ++i) u(i, j) = gauss(rng);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < n; ++i) v(i, j) = gauss(rng);
  return u * v.transpose();
}

Matrix gen_sparse_outliers(int d, int n, double density, double a,
                           std::uint64_t seed) {
  check_dims(d, n);
  if (density < 0 || density > 1) {
    throw std::invalid_argument("gen_sparse_outliers: density must lie in [0,1]");
  }
  if (a <= 0) throw std::invalid_argument("gen_sparse_outliers: scale must be positive");
  const int count = static_cast<int>(std::floor(density * d * n));
  Matrix out = Matrix::Zero(d, n);
  if (count == 0) return out;
  std::mt19937_64 rng(mix_seed(seed, 1));
  std::uniform_real_distribution<double> uniform(-a, a);
  for (int flat : sample_flat(d, n, count, mix_seed(seed, 0))) {
    out(flat / n, flat % n) = uniform(rng);
  }
  return out;
}

IndexSet sample_mask(int d, int n, double fraction, std::uint64_t seed) {
  check_dims(d, n);
  if (fraction <= 0 || fraction > 1) {
    throw std::invalid_argument("sample_mask: fraction must lie in (0,1]");
  }
  const int count = static_cast<int>(std::floor(fraction * d * n));
  auto flats = sample_flat(d, n, count, seed);
  std::sort(flats.begin(), flats.end());
  IndexSet mask;
  mask.reserve(flats.size());
  for (int flat : flats) mask.push_back({flat / n, flat % n});
  return mask;
}

IndexSet mask_complement(int d, int n, const IndexSet& mask) {
  check_dims(d, n);
  IndexSet out;
  out.reserve(static_cast<std::size_t>(d) * n - mask.size());
  std::size_t next = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) {
      if (next < mask.size() && mask[next].row == i && mask[next].col == j) {
        ++next;
      } else {
        out.push_back({i, j});
      }
    }
  }
  return out;
}

SynthData gen_synthetic_problem(const SynthSpec& raw) {
  SynthData data;
  data.resolved = raw.resolve();
  const SynthSpec& spec = data.resolved;
  check_dims(spec.d1, spec.n);
  check_dims(spec.d2, spec.n);
  if (spec.noise_sd < 0) {
    throw std::invalid_argument("gen_synthetic_problem: noise_sd must be nonnegative");
  }

  const int stacked = spec.d1 + spec.d2;
  data.truth.x0 = gen_low_rank(stacked, spec.n, spec.r0, mix_seed(spec.seed, 0));
  data.truth.xk.push_back(gen_low_rank(spec.d1, spec.n, spec.r1, mix_seed(spec.seed, 1)));
  data.truth.xk.push_back(gen_low_rank(spec.d2, spec.n, spec.r2, mix_seed(spec.seed, 2)));
  for (int k = 0; k < 2; ++k) {
    const int d = k == 0 ? spec.d1 : spec.d2;
    if (spec.outlier_density > 0) {
      data.truth.sk.push_back(gen_sparse_outliers(
          d, spec.n, spec.outlier_density, spec.outlier_scale, mix_seed(spec.seed, 3 + k)));
    } else {
      data.truth.sk.push_back(Matrix::Zero(d, spec.n));
    }
  }

  const std::vector<int> dims = {spec.d1, spec.d2};
  data.problem.cols = spec.n;
  for (int k = 0; k < 2; ++k) {
    const int d = dims[k];
    Matrix y = select_block(*data.truth.x0, k, dims) + data.truth.xk[k] +
               data.truth.sk[k];
    if (spec.noise_sd > 0) {
      std::mt19937_64 rng(mix_seed(spec.seed, 5 + k));
      std::normal_distribution<double> gauss(0.0, spec.noise_sd);
      for (int j = 0; j < spec.n; ++j)
        for (int i = 0; i < d; ++i) y(i, j) += gauss(rng);
    }
    data.full_views.push_back(y);

    IndexSet train = sample_mask(d, spec.n, spec.observed_fraction,
                                 mix_seed(spec.seed, 7 + k));
    data.test_sets.push_back(mask_complement(d, spec.n, train));

    ViewData view;
    view.rows = d;
    view.cols = spec.n;
    view.loss = LossKind::kSquared;
    view.entries.reserve(train.size());
    for (const auto& idx : train) {
      view.entries.push_back({idx.row, idx.col, y(idx.row, idx.col)});
    }
    data.problem.views.push_back(std::move(view));
    data.train_sets.push_back(std::move(train));
  }
  return data;
}

}  // namespace mvcomp
