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

#ifndef DPSCO_MECHANISMS_NOISE_H_
#define DPSCO_MECHANISMS_NOISE_H_

#include <random>
#include <string>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/core/privacy_budget.h"

namespace dpsco {

// Every run owns one generator; draws are deterministic for a fixed seed and
// draw order.
using Rng = std::mt19937_64;

enum class NoiseFamily { kGaussian, kLaplace };

std::string NoiseFamilyName(NoiseFamily family);

// Default Gaussian multiplier: sigma^2 = 16 Delta^2 ln(1/delta) / epsilon^2.
inline constexpr double kDefaultGaussianMultiplier = 4.0;

// Pure-DP releases use Laplace scale 4 s sqrt(d) / epsilon for a release with
// base l2 sensitivity s, i.e. l1 sensitivity 4 s sqrt(d).
inline constexpr double kLaplaceMultiplier = 4.0;

struct NoiseCalibration {
  // Smaller values trade the privacy proof's constant for less noise.
  double gaussian_multiplier = kDefaultGaussianMultiplier;
};

// Per-coordinate Gaussian standard deviation
//   multiplier * sensitivity2 * sqrt(ln(1/delta)) / epsilon.
// A zero sensitivity yields zero; callers must reject that degenerate case.
// Fails for pure budgets and negative sensitivities.
absl::StatusOr<double> GaussianScale(
    double sensitivity2, const PrivacyBudget& budget,
    double multiplier = kDefaultGaussianMultiplier);

// Laplace scale sensitivity1 / epsilon. Fails on nonpositive inputs.
absl::StatusOr<double> LaplaceScale(double sensitivity1, double epsilon);

// i.i.d. per-coordinate noise of one family. Scale 0 is the zero vector.
class NoiseSpec {
 public:
  static absl::StatusOr<NoiseSpec> Create(NoiseFamily family, double scale,
                                          int dimension);

  NoiseFamily family() const { return family_; }
  double scale() const { return scale_; }
  int dimension() const { return dimension_; }

 private:
  NoiseSpec(NoiseFamily family, double scale, int dimension)
      : family_(family), scale_(scale), dimension_(dimension) {}

  NoiseFamily family_;
  double scale_;
  int dimension_;
};

// Noise for releasing a d-dimensional vector whose base l2 sensitivity is
// `sensitivity`: Gaussian with GaussianScale(sensitivity) under approximate
// budgets, Laplace with LaplaceScale(4 sensitivity sqrt(d), epsilon) under
// pure ones.
absl::StatusOr<NoiseSpec> ReleaseNoise(double sensitivity,
                                       const PrivacyBudget& budget,
                                       int dimension,
                                       const NoiseCalibration& calibration);

Eigen::VectorXd SampleNoise(const NoiseSpec& spec, Rng& rng);

}  // namespace dpsco

#endif  // DPSCO_MECHANISMS_NOISE_H_
