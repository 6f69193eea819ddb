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

#include "dpsco/oracle/tnc.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace dpsco::oracle {

absl::StatusOr<Eigen::VectorXd> TncMinimizer(const Eigen::VectorXd& mean,
                                             double theta) {
  if (!(theta > 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("theta must exceed 1, got %g.", theta));
  }
  const double norm = mean.norm();
  if (norm > 1.0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "Mean vector norm %.17g exceeds 1; the boundary case is not modeled.",
        norm));
  }
  if (norm == 0.0) return Eigen::VectorXd::Zero(mean.size());
  return Eigen::VectorXd(mean /
                         std::pow(norm, (theta - 2.0) / (theta - 1.0)));
}

Eigen::VectorXd FiniteDiffGradient(const LossModel& model,
                                   const Eigen::VectorXd& w, const Sample& x,
                                   double h) {
  Eigen::VectorXd grad(w.size());
  Eigen::VectorXd probe = w;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    probe[i] = w[i] + h;
    const double up = internal::Value(model, probe, x.x, x.y);
    probe[i] = w[i] - h;
    const double down = internal::Value(model, probe, x.x, x.y);
    probe[i] = w[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace dpsco::oracle
