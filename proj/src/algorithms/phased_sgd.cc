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

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsco/algorithms/drivers.h"
#include "dpsco/algorithms/schedule.h"
#include "dpsco/base/status_macros.h"
#include "src/algorithms/run_context.h"

namespace dpsco {
namespace internal {

absl::StatusOr<Eigen::VectorXd> RunPhasedSgd(RunContext& ctx,
                                             const std::string& label,
                                             const LossModel& model,
                                             const FeasibleSet& set,
                                             const Segment& range,
                                             const Eigen::VectorXd& w_start,
                                             double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Phased-SGD stepsize must be positive, got ", eta, "."));
  }
  ASSIGN_OR_RETURN(std::vector<int64_t> sizes, PhasedSgdSizes(range.size()));
  const int planned = CeilLog2(range.size());
  if (static_cast<int>(sizes.size()) < planned) {
    ctx.Warn(absl::StrFormat(
        "%sphased: stages %d..%d have no samples and were skipped", label,
        sizes.size() + 1, planned));
  }
  ASSIGN_OR_RETURN(PartitionResult parts,
                   Partition(range, sizes, LeftoverPolicy::kDrop));
  ctx.MarkUnused(parts.unused);

  ASSIGN_OR_RETURN(Eigen::VectorXd w, ctx.Project(set, w_start));
  for (size_t i = 0; i < parts.segments.size(); ++i) {
    const int stage = static_cast<int>(i) + 1;
    const Segment& segment = parts.segments[i];
    const double eta_i = std::ldexp(eta, -2 * stage);
    ASSIGN_OR_RETURN(SgdPassResult pass,
                     ctx.Pass(model, segment, w, eta_i, set));
    ASSIGN_OR_RETURN(
        w, ctx.Release(absl::StrCat(label, "phased[", stage, "]"), segment,
                       model.lipschitz() * eta_i, eta_i, pass.averaged));
    if (i + 1 < parts.segments.size()) {
      ASSIGN_OR_RETURN(w, ctx.Project(set, w));
    }
  }
  return w;
}

}  // namespace internal

absl::StatusOr<RunRecord> PhasedSgd(const LabeledDataset& data,
                                    const LossModel& model,
                                    const FeasibleSet& set,
                                    const Eigen::VectorXd& w0,
                                    const PrivacyBudget& budget,
                                    const PhasedSgdConfig& config,
                                    uint64_t seed,
                                    const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w0));
  internal::RunContext ctx(data, budget, options, seed, "phased_sgd",
                           data.dimension());
  if (!Membership(set, w0, options.dykstra.tol)) {
    ctx.Warn("start point was outside the set and has been projected");
  }
  const double distance = config.distance_bound.value_or(set.diameter());
  double eta = config.eta.has_value()
                   ? *config.eta
                   : DefaultStepsize(distance, model.lipschitz(), data.size(),
                                     data.dimension(), budget);
  eta = ctx.ClampStep("eta", eta, model);
  ASSIGN_OR_RETURN(Eigen::VectorXd w,
                   internal::RunPhasedSgd(ctx, "", model, set,
                                          Segment{0, data.size(), 0}, w0, eta));
  return ctx.Finish(std::move(w));
}

}  // namespace dpsco
