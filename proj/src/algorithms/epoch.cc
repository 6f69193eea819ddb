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

#include <cmath>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsco/algorithms/drivers.h"
#include "dpsco/algorithms/schedule.h"
#include "dpsco/base/status_macros.h"
#include "src/algorithms/run_context.h"

namespace dpsco {
namespace internal {

absl::StatusOr<Eigen::VectorXd> RunEpochDpSgd(
    RunContext& ctx, const std::string& label, const LossModel& model,
    const FeasibleSet& set, const Segment& range,
    const Eigen::VectorXd& w_start, double eta1, int64_t n1,
    double sensitivity_factor) {
  if (!(model.strong_convexity() > 0.0)) {
    return absl::InvalidArgumentError(
        "Epoch-DP-SGD needs a strongly convex loss (lambda_sc > 0).");
  }
  if (!model.is_smooth()) {
    return absl::InvalidArgumentError("Epoch-DP-SGD needs a smooth loss.");
  }
  if (!(eta1 > 0.0) || !std::isfinite(eta1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eta1 must be positive, got ", eta1, "."));
  }
  if (!(sensitivity_factor >= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Sensitivity factor must be at least 1, got ", sensitivity_factor,
        "."));
  }
  ASSIGN_OR_RETURN(std::vector<int64_t> sizes, EpochSizes(range.size(), n1));
  ASSIGN_OR_RETURN(PartitionResult parts,
                   Partition(range, sizes, LeftoverPolicy::kAppendLast));
  const double eta = ctx.ClampStep(label + "epoch", eta1, model);

  ASSIGN_OR_RETURN(Eigen::VectorXd w, ctx.Project(set, w_start));
  for (size_t i = 0; i < parts.segments.size(); ++i) {
    const Segment& segment = parts.segments[i];
    const double eta_i = std::ldexp(eta, -static_cast<int>(i));
    ASSIGN_OR_RETURN(SgdPassResult pass,
                     ctx.Pass(model, segment, w, eta_i, set));
    ASSIGN_OR_RETURN(double stability,
                     StabilitySensitivity(model, segment.size()));
    ASSIGN_OR_RETURN(
        w, ctx.Release(absl::StrCat(label, "epoch[", i + 1, "]"), segment,
                       sensitivity_factor / 2.0 * stability, eta_i,
                       pass.averaged));
    if (i + 1 < parts.segments.size()) {
      ASSIGN_OR_RETURN(w, ctx.Project(set, w));
    }
  }
  return w;
}

}  // namespace internal

absl::StatusOr<RunRecord> EpochDpSgd(const LabeledDataset& data,
                                     const LossModel& model,
                                     const FeasibleSet& set,
                                     const Eigen::VectorXd& w0,
                                     const PrivacyBudget& budget,
                                     const EpochDpSgdConfig& config,
                                     uint64_t seed,
                                     const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w0));
  internal::RunContext ctx(data, budget, options, seed, "epoch_dp_sgd",
                           data.dimension());
  if (!Membership(set, w0, options.dykstra.tol)) {
    ctx.Warn("start point was outside the set and has been projected");
  }
  ASSIGN_OR_RETURN(Eigen::VectorXd w,
                   internal::RunEpochDpSgd(
                       ctx, "", model, set, Segment{0, data.size(), 0}, w0,
                       config.eta1, config.n1, config.sensitivity_factor));
  return ctx.Finish(std::move(w));
}

absl::StatusOr<RunRecord> FasterDpsgdSc(const LabeledDataset& data,
                                        const LossModel& model,
                                        const FeasibleSet& set,
                                        const Eigen::VectorXd& w0,
                                        const PrivacyBudget& budget,
                                        const FasterDpsgdScConfig& config,
                                        uint64_t seed,
                                        const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w0));
  if (!model.is_smooth() || !(model.strong_convexity() > 0.0)) {
    return absl::InvalidArgumentError(
        "faster_dpsgd_sc needs a smooth, strongly convex loss.");
  }
  const double beta = *model.smoothness();
  const double kappa = beta / model.strong_convexity();
  ASSIGN_OR_RETURN(int64_t n1, FasterFirstEpochSize(config.tau, kappa));
  const int64_t half = data.size() / 2;
  if (EpochCount(half, n1) < 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "First epoch size %d is too large for %d samples per half; use a "
        "smaller tau or a larger n.",
        n1, half));
  }
  const double distance = config.distance_bound.value_or(set.diameter());
  internal::RunContext ctx(data, budget, options, seed, "faster_dpsgd_sc",
                           data.dimension());
  if (!Membership(set, w0, options.dykstra.tol)) {
    ctx.Warn("start point was outside the set and has been projected");
  }
  if (static_cast<double>(data.size()) < std::pow(kappa, config.tau)) {
    ctx.Warn(absl::StrFormat("n = %d is below kappa^tau = %.6g", data.size(),
                             std::pow(kappa, config.tau)));
  }
  ctx.MarkUnused(Segment{2 * half, data.size(), 0});

  ASSIGN_OR_RETURN(Eigen::VectorXd first,
                   internal::RunIteratedPhasedSgd(ctx, "first/", model, set,
                                                  Segment{0, half, 0}, w0,
                                                  2.0, distance));
  ASSIGN_OR_RETURN(Eigen::VectorXd w,
                   internal::RunEpochDpSgd(
                       ctx, "second/", model, set, Segment{half, 2 * half, 0},
                       first, 1.0 / (4.0 * beta), n1, 2.0));
  return ctx.Finish(std::move(w));
}

}  // namespace dpsco
