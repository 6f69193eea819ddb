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

#ifndef DPSCO_ALGORITHMS_DRIVERS_H_
#define DPSCO_ALGORITHMS_DRIVERS_H_

#include <cstdint>
#include <optional>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/algorithms/run_record.h"
#include "dpsco/core/dataset.h"
#include "dpsco/core/loss.h"
#include "dpsco/core/privacy_budget.h"
#include "dpsco/geometry/feasible_set.h"
#include "dpsco/mechanisms/noise.h"

namespace dpsco {

struct DriverOptions {
  NoiseCalibration calibration;
  // Clip each per-sample gradient to the declared Lipschitz constant.
  bool clip_gradients = true;
  // Test hook: scales are computed and recorded but no noise is added.
  bool disable_noise = false;
  DykstraOptions dykstra;
};

// Unset distance bounds default to the feasible set's diameter.
struct PhasedSgdConfig {
  std::optional<double> eta;
  std::optional<double> distance_bound;
};

struct PhasedErmConfig {
  std::optional<double> eta;
  std::optional<double> distance_bound;
  int max_inner_iterations = 200000;
};

struct PhasedSgdScConfig {
  double gamma = 1.0;
  std::optional<double> distance_bound;
};

struct PsaConfig {
  std::optional<double> initial_radius;
};

struct Psa2Config {
  double theta = 2.0;
  double tnc_lambda = 1.0;
  std::optional<double> chi0;
  std::optional<double> distance_bound;
  // Held-out data for the evaluation-only selection of a trajectory point.
  const LabeledDataset* selection_data = nullptr;
};

struct IteratedPhasedSgdConfig {
  double theta_bar = 2.0;
  std::optional<double> distance_bound;
};

struct EpochDpSgdConfig {
  double eta1 = 0.0;
  int64_t n1 = 0;
  // Releases use sensitivity factor * L^2 / (lambda_sc n_i). The default 2
  // gives the 8 L^2 Gaussian constant; 1 gives 4 L^2.
  double sensitivity_factor = 2.0;
};

struct FasterDpsgdScConfig {
  double tau = 2.0;
  std::optional<double> distance_bound;
};

absl::StatusOr<RunRecord> PhasedSgd(const LabeledDataset& data,
                                    const LossModel& model,
                                    const FeasibleSet& set,
                                    const Eigen::VectorXd& w0,
                                    const PrivacyBudget& budget,
                                    const PhasedSgdConfig& config,
                                    uint64_t seed,
                                    const DriverOptions& options = {});

absl::StatusOr<RunRecord> PhasedErm(const LabeledDataset& data,
                                    const LossModel& model,
                                    const FeasibleSet& set,
                                    const Eigen::VectorXd& w0,
                                    const PrivacyBudget& budget,
                                    const PhasedErmConfig& config,
                                    uint64_t seed,
                                    const DriverOptions& options = {});

absl::StatusOr<RunRecord> PhasedSgdSc(const LabeledDataset& data,
                                      const LossModel& model,
                                      const FeasibleSet& set,
                                      const Eigen::VectorXd& w0,
                                      const PrivacyBudget& budget,
                                      const PhasedSgdScConfig& config,
                                      uint64_t seed,
                                      const DriverOptions& options = {});

absl::StatusOr<RunRecord> Psa(const LabeledDataset& data,
                              const LossModel& model, const FeasibleSet& set,
                              const Eigen::VectorXd& w1,
                              const PrivacyBudget& budget,
                              const PsaConfig& config, uint64_t seed,
                              const DriverOptions& options = {});

absl::StatusOr<RunRecord> Psa2(const LabeledDataset& data,
                               const LossModel& model, const FeasibleSet& set,
                               const Eigen::VectorXd& w0,
                               const PrivacyBudget& budget,
                               const Psa2Config& config, uint64_t seed,
                               const DriverOptions& options = {});

absl::StatusOr<RunRecord> IteratedPhasedSgd(
    const LabeledDataset& data, const LossModel& model, const FeasibleSet& set,
    const Eigen::VectorXd& w0, const PrivacyBudget& budget,
    const IteratedPhasedSgdConfig& config, uint64_t seed,
    const DriverOptions& options = {});

absl::StatusOr<RunRecord> EpochDpSgd(const LabeledDataset& data,
                                     const LossModel& model,
                                     const FeasibleSet& set,
                                     const Eigen::VectorXd& w0,
                                     const PrivacyBudget& budget,
                                     const EpochDpSgdConfig& config,
                                     uint64_t seed,
                                     const DriverOptions& options = {});

absl::StatusOr<RunRecord> FasterDpsgdSc(const LabeledDataset& data,
                                        const LossModel& model,
                                        const FeasibleSet& set,
                                        const Eigen::VectorXd& w0,
                                        const PrivacyBudget& budget,
                                        const FasterDpsgdScConfig& config,
                                        uint64_t seed,
                                        const DriverOptions& options = {});

}  // namespace dpsco

#endif  // DPSCO_ALGORITHMS_DRIVERS_H_
