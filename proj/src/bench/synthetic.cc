//
// Copyright 2026 The DPSCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpsco/bench/synthetic.h"

#include <cmath>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpsco/mechanisms/noise.h"

namespace dpsco::bench {
namespace {

absl::Status CheckShape(int64_t n, int dimension) {
  if (n < 1 || dimension < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Synthetic data needs n >= 1 and d >= 1, got n = ", n, ", d = ",
        dimension, "."));
  }
  return absl::OkStatus();
}

FeatureMatrix SphereRows(int64_t n, int dimension, Rng& rng) {
  std::normal_distribution<double> normal;
  FeatureMatrix x(n, dimension);
  for (int64_t i = 0; i < n; ++i) {
    double norm = 0.0;
    while (norm == 0.0) {
      for (int j = 0; j < dimension; ++j) x(i, j) = normal(rng);
      norm = x.row(i).norm();
    }
    x.row(i) /= norm;
  }
  return x;
}

}  // namespace

absl::StatusOr<LabeledDataset> SyntheticLinear(int64_t n,
                                               const Eigen::VectorXd& w_star,
                                               double label_noise,
                                               uint64_t seed) {
  const int d = static_cast<int>(w_star.size());
  if (absl::Status s = CheckShape(n, d); !s.ok()) return s;
  if (!(label_noise >= 0.0)) {
    return absl::InvalidArgumentError("label_noise must be nonnegative.");
  }
  Rng rng(seed);
  FeatureMatrix x = SphereRows(n, d, rng);
  Eigen::VectorXd y = x * w_star;
  if (label_noise > 0.0) {
    std::uniform_real_distribution<double> noise(-label_noise, label_noise);
    for (int64_t i = 0; i < n; ++i) y[i] += noise(rng);
  }
  return LabeledDataset::Create(std::move(x), std::move(y));
}

absl::StatusOr<LabeledDataset> SyntheticClassification(
    int64_t n, const Eigen::VectorXd& w_star, double label_noise,
    uint64_t seed) {
  absl::StatusOr<LabeledDataset> data =
      SyntheticLinear(n, w_star, label_noise, seed);
  if (!data.ok()) return data.status();
  Eigen::VectorXd y = data->labels().unaryExpr(
      [](double v) { return v >= 0.0 ? 1.0 : -1.0; });
  return LabeledDataset::Create(data->features(), std::move(y));
}

absl::StatusOr<LabeledDataset> SyntheticTnc(int64_t n, int dimension,
                                            uint64_t seed) {
  if (absl::Status s = CheckShape(n, dimension); !s.ok()) return s;
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  const double level = 1.0 / std::sqrt(static_cast<double>(dimension));
  FeatureMatrix x(n, dimension);
  for (int64_t i = 0; i < n; ++i) {
    for (int j = 0; j < dimension; ++j) x(i, j) = coin(rng) ? level : -level;
  }
  return LabeledDataset::Create(std::move(x), Eigen::VectorXd::Zero(n));
}

Eigen::VectorXd RandomL1Vector(int dimension, double l1_norm, uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dimension);
  double norm = 0.0;
  while (norm == 0.0) {
    for (int j = 0; j < dimension; ++j) v[j] = normal(rng);
    norm = v.lpNorm<1>();
  }
  return v * (l1_norm / norm);
}

}  // namespace dpsco::bench
