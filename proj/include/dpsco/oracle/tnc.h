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

#ifndef DPSCO_ORACLE_TNC_H_
#define DPSCO_ORACLE_TNC_H_

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/core/dataset.h"
#include "dpsco/core/loss.h"

namespace dpsco::oracle {

// Stationary point Z / |Z|^((theta - 2) / (theta - 1)) of the TNC hard
// instance whose samples average to `mean`.
absl::StatusOr<Eigen::VectorXd> TncMinimizer(const Eigen::VectorXd& mean,
                                             double theta);

// Central differences of the per-sample loss, coordinate by coordinate.
Eigen::VectorXd FiniteDiffGradient(const LossModel& model,
                                   const Eigen::VectorXd& w, const Sample& x,
                                   double h);

}  // namespace dpsco::oracle

#endif  // DPSCO_ORACLE_TNC_H_
