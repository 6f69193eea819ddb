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

#include "dpsco/oracle/erm_exact.h"

#include <algorithm>
#include <cmath>
#include <span>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "dpsco/base/status_macros.h"
#include "dpsco/oracle/qp_project.h"

namespace dpsco::oracle {
namespace {

absl::StatusOr<Eigen::VectorXd> OracleProject(const FeasibleSet& set,
                                              const Eigen::VectorXd& point) {
  if (set.kind() != FeasibleSet::Kind::kIntersection) {
    return ProjectSimple(set, point);
  }
  return QpProject(std::span<const FeasibleSet>(&set, 1), point);
}

double Risk(const LossModel& model, const LabeledDataset& data,
            const Eigen::VectorXd& w) {
  double total = 0.0;
  for (int64_t i = 0; i < data.size(); ++i) {
    total += internal::Value(model, w, data.sample(i).x, data.label(i));
  }
  return total / static_cast<double>(data.size());
}

Eigen::VectorXd Gradient(const LossModel& model, const LabeledDataset& data,
                         const Eigen::VectorXd& w) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(w.size());
  const double inv = 1.0 / static_cast<double>(data.size());
  for (int64_t i = 0; i < data.size(); ++i) {
    internal::AddGradient(model, w, data.sample(i).x, data.label(i), inv, g);
  }
  return g;
}

}  // namespace

absl::StatusOr<ErmReport> ErmExactWithReport(const LossModel& model,
                                             const LabeledDataset& data,
                                             const FeasibleSet& set, double tol,
                                             int64_t max_iterations,
                                             const Eigen::VectorXd* start) {
  if (data.dimension() != set.dimension() || data.dimension() > 200) {
    return absl::InvalidArgumentError(
        "Exact ERM needs matching dimensions and d <= 200.");
  }
  Eigen::VectorXd w = start != nullptr
                          ? *start
                          : Eigen::VectorXd::Zero(data.dimension());
  ASSIGN_OR_RETURN(w, OracleProject(set, w));
  double value = Risk(model, data, w);
  double lipschitz_estimate = 1.0;

  ErmReport report;
  for (int64_t it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd g = Gradient(model, data, w);
    Eigen::VectorXd next;
    double next_value = 0.0;
    for (int b = 0; b < 100; ++b) {
      ASSIGN_OR_RETURN(next, OracleProject(set, w - g / lipschitz_estimate));
      next_value = Risk(model, data, next);
      const Eigen::VectorXd step = next - w;
      if (next_value <= value + g.dot(step) +
                            0.5 * lipschitz_estimate * step.squaredNorm()) {
        break;
      }
      lipschitz_estimate *= 2.0;
    }
    report.residual = lipschitz_estimate * (next - w).norm();
    if (next_value > value) report.monotone = false;
    report.iterations = it + 1;
    if (next_value <= value) {
      w = std::move(next);
      value = next_value;
    }
    if (report.residual <= tol) {
      report.minimizer = std::move(w);
      report.value = value;
      return report;
    }
    lipschitz_estimate = std::max(lipschitz_estimate * 0.5, 1e-12);
  }
  return absl::DeadlineExceededError(absl::StrFormat(
      "Exact ERM hit %d iterations; gradient-mapping residual %.3g.",
      max_iterations, report.residual));
}

absl::StatusOr<Eigen::VectorXd> ErmExact(const LossModel& model,
                                         const LabeledDataset& data,
                                         const FeasibleSet& set, double tol) {
  ASSIGN_OR_RETURN(ErmReport report,
                   ErmExactWithReport(model, data, set, tol));
  return std::move(report.minimizer);
}

}  // namespace dpsco::oracle
