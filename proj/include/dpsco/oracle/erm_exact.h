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

#ifndef DPSCO_ORACLE_ERM_EXACT_H_
#define DPSCO_ORACLE_ERM_EXACT_H_

#include <cstdint>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/core/dataset.h"
#include "dpsco/core/loss.h"
#include "dpsco/geometry/feasible_set.h"

namespace dpsco::oracle {

inline constexpr double kOracleTolerance = 1e-10;
inline constexpr int64_t kOracleMaxIterations = 1000000;

struct ErmReport {
  Eigen::VectorXd minimizer;
  double value = 0.0;
  // Norm of the projected-gradient mapping at exit.
  double residual = 0.0;
  int64_t iterations = 0;
  // Set when some accepted step failed to decrease the objective.
  bool monotone = true;
};

// Full-gradient projected descent with backtracking on the empirical risk.
absl::StatusOr<ErmReport> ErmExactWithReport(
    const LossModel& model, const LabeledDataset& data, const FeasibleSet& set,
    double tol = kOracleTolerance, int64_t max_iterations = kOracleMaxIterations,
    const Eigen::VectorXd* start = nullptr);

absl::StatusOr<Eigen::VectorXd> ErmExact(const LossModel& model,
                                         const LabeledDataset& data,
                                         const FeasibleSet& set,
                                         double tol = kOracleTolerance);

}  // namespace dpsco::oracle

#endif  // DPSCO_ORACLE_ERM_EXACT_H_
