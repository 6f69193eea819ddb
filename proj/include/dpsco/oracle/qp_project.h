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

#ifndef DPSCO_ORACLE_QP_PROJECT_H_
#define DPSCO_ORACLE_QP_PROJECT_H_

#include <span>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/geometry/feasible_set.h"

namespace dpsco::oracle {

struct QpReport {
  Eigen::VectorXd point;
  // Max of the stationarity norm and the complementarity gap at exit.
  double kkt_residual = 0.0;
  int newton_steps = 0;
};

// Euclidean projection onto the intersection of `sets` by a log-barrier
// interior-point method. Slow and independent of the Dykstra path.
absl::StatusOr<QpReport> QpProjectWithReport(
    std::span<const FeasibleSet> sets, const Eigen::VectorXd& point,
    double tol = 1e-10);

absl::StatusOr<Eigen::VectorXd> QpProject(std::span<const FeasibleSet> sets,
                                          const Eigen::VectorXd& point,
                                          double tol = 1e-10);

// Closed-form projections written separately from the geometry module. The
// l1 ball uses bisection on the soft threshold. Intersections are rejected.
absl::StatusOr<Eigen::VectorXd> ProjectSimple(const FeasibleSet& set,
                                              const Eigen::VectorXd& point);

}  // namespace dpsco::oracle

#endif  // DPSCO_ORACLE_QP_PROJECT_H_
