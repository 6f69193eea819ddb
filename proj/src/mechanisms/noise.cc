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

#include "dpsco/mechanisms/noise.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpsco/base/status_macros.h"

namespace dpsco {

std::string NoiseFamilyName(NoiseFamily family) {
  return family == NoiseFamily::kGaussian ? "gaussian" : "laplace";
}

absl::StatusOr<double> GaussianScale(double sensitivity2,
                                     const PrivacyBudget& budget,
                                     double multiplier) {
  if (budget.is_pure()) {
    return absl::InvalidArgumentError(
        "The Gaussian mechanism needs an approximate (epsilon, delta) budget.");
  }
  if (!(sensitivity2 >= 0) || !std::isfinite(sensitivity2)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "L2 sensitivity must be nonnegative and finite, got ", sensitivity2,
        "."));
  }
  if (!(multiplier > 0)) {
    return absl::InvalidArgumentError("Gaussian multiplier must be positive.");
  }
  return multiplier * sensitivity2 * std::sqrt(budget.LogInverseDelta()) /
         budget.epsilon();
}

absl::StatusOr<double> LaplaceScale(double sensitivity1, double epsilon) {
  if (!(sensitivity1 > 0) || !std::isfinite(sensitivity1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "L1 sensitivity must be positive and finite, got ", sensitivity1,
        "."));
  }
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be positive and finite, got ", epsilon, "."));
  }
  return sensitivity1 / epsilon;
}

absl::StatusOr<NoiseSpec> NoiseSpec::Create(NoiseFamily family, double scale,
                                            int dimension) {
  if (!(scale >= 0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Noise scale must be nonnegative and finite, got ", scale,
                     "."));
  }
  if (dimension < 1) {
    return absl::InvalidArgumentError("Noise dimension must be at least 1.");
  }
  return NoiseSpec(family, scale, dimension);
}

absl::StatusOr<NoiseSpec> ReleaseNoise(double sensitivity,
                                       const PrivacyBudget& budget,
                                       int dimension,
                                       const NoiseCalibration& calibration) {
  if (budget.is_pure()) {
    ASSIGN_OR_RETURN(
        const double scale,
        LaplaceScale(kLaplaceMultiplier * sensitivity * std::sqrt(dimension),
                     budget.epsilon()));
    return NoiseSpec::Create(NoiseFamily::kLaplace, scale, dimension);
  }
  ASSIGN_OR_RETURN(
      const double scale,
      GaussianScale(sensitivity, budget, calibration.gaussian_multiplier));
  return NoiseSpec::Create(NoiseFamily::kGaussian, scale, dimension);
}

Eigen::VectorXd SampleNoise(const NoiseSpec& spec, Rng& rng) {
  Eigen::VectorXd noise = Eigen::VectorXd::Zero(spec.dimension());
  if (spec.scale() == 0) return noise;
  if (spec.family() == NoiseFamily::kGaussian) {
    std::normal_distribution<double> normal(0.0, spec.scale());
    for (int i = 0; i < spec.dimension(); ++i) noise[i] = normal(rng);
    return noise;
  }
  // Inverse CDF of the two-sided Laplace distribution.
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  for (int i = 0; i < spec.dimension(); ++i) {
    double u = uniform(rng);
    while (1.0 - 2.0 * std::abs(u) <= 0) u = uniform(rng);
    noise[i] = -spec.scale() * std::copysign(1.0, u) *
               std::log(1.0 - 2.0 * std::abs(u));
  }
  return noise;
}

}  // namespace dpsco
