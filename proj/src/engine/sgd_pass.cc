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

#include "dpsco/engine/sgd_pass.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpsco/base/status_macros.h"

namespace dpsco {

absl::StatusOr<SgdPassResult> SgdPass(const LossModel& model,
                                      const LabeledDataset& data,
                                      const Segment& segment,
                                      const Eigen::VectorXd& w_start,
                                      double stepsize, const FeasibleSet& set,
                                      const SgdPassOptions& options) {
  if (!(stepsize > 0) || !std::isfinite(stepsize)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Stepsize must be positive and finite, got ", stepsize, "."));
  }
  if (segment.begin < 0 || segment.end > data.size() || segment.size() < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Segment [", segment.begin, ", ", segment.end,
                     ") is empty or outside the dataset of size ", data.size(),
                     "."));
  }
  if (w_start.size() != data.dimension() ||
      set.dimension() != data.dimension()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Dimension mismatch: start point ", w_start.size(), ", set ",
        set.dimension(), ", data ", data.dimension(), "."));
  }
  if (model.dimension() >= 0 && model.dimension() != data.dimension()) {
    return absl::InvalidArgumentError(
        "Loss model dimension does not match the data.");
  }

  SgdPassResult result;
  Eigen::VectorXd w = w_start;
  if (!Membership(set, w, options.dykstra.tol)) {
    ASSIGN_OR_RETURN(w, Project(set, w, options.dykstra));
    result.start_projected = true;
  }

  const int d = data.dimension();
  Eigen::VectorXd sum = w;
  Eigen::VectorXd grad(d);
  if (options.record_trajectory) {
    result.trajectory.reserve(segment.size() + 1);
    result.trajectory.push_back(w);
  }
  for (int64_t t = segment.begin; t < segment.end; ++t) {
    grad.setZero();
    internal::AddGradient(model, w, data.sample(t).x, data.label(t), 1.0,
                          grad);
    if (options.clip_norm.has_value()) {
      const double norm = grad.norm();
      if (norm > *options.clip_norm) grad *= *options.clip_norm / norm;
    }
    w.noalias() -= stepsize * grad;
    ASSIGN_OR_RETURN(ProjectionReport projected,
                     ProjectWithReport(set, w, options.dykstra));
    if (!projected.converged) {
      return absl::FailedPreconditionError(absl::StrCat(
          "Dykstra projection failed at sample ", t, " after ",
          projected.iterations, " cycles; residual=", projected.residual,
          "."));
    }
    result.max_projection_residual =
        std::max(result.max_projection_residual, projected.residual);
    w = std::move(projected.point);
    sum += w;
    if (options.record_trajectory) result.trajectory.push_back(w);
  }
  result.averaged = sum / static_cast<double>(segment.size() + 1);
  result.last = std::move(w);
  return result;
}

absl::StatusOr<double> StabilitySensitivity(const LossModel& model,
                                            int64_t segment_size) {
  if (!(model.strong_convexity() > 0)) {
    return absl::InvalidArgumentError(
        "Stability sensitivity needs a strongly convex loss (lambda_sc > 0); "
        "use the stepsize-based sensitivity instead.");
  }
  if (segment_size < 1) {
    return absl::InvalidArgumentError("Segment size must be at least 1.");
  }
  const double lipschitz = model.lipschitz();
  return 2.0 * lipschitz * lipschitz /
         (model.strong_convexity() * static_cast<double>(segment_size));
}

}  // namespace dpsco
