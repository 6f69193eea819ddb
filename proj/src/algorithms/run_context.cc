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

#include "src/algorithms/run_context.h"

#include <algorithm>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsco/base/status_macros.h"

namespace dpsco::internal {

RunContext::RunContext(const LabeledDataset& data, const PrivacyBudget& budget,
                       const DriverOptions& options, uint64_t seed,
                       std::string algorithm, int dimension)
    : data_(data), budget_(budget), options_(options), rng_(seed) {
  record_.algorithm = std::move(algorithm);
  record_.seed = seed;
  record_.dimension = dimension;
  record_.budget = budget;
  record_.calibration = options.calibration;
  record_.noise_disabled = options.disable_noise;
}

absl::StatusOr<Eigen::VectorXd> RunContext::Project(const FeasibleSet& set,
                                                    const Eigen::VectorXd& w) {
  ASSIGN_OR_RETURN(ProjectionReport report,
                   ProjectWithReport(set, w, options_.dykstra));
  if (!report.converged) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Dykstra projection did not converge; residual=", report.residual,
        "."));
  }
  record_.max_projection_residual =
      std::max(record_.max_projection_residual, report.residual);
  return std::move(report.point);
}

absl::StatusOr<SgdPassResult> RunContext::Pass(const LossModel& model,
                                               const Segment& segment,
                                               const Eigen::VectorXd& w_start,
                                               double stepsize,
                                               const FeasibleSet& set) {
  SgdPassOptions pass_options;
  if (options_.clip_gradients) pass_options.clip_norm = model.lipschitz();
  pass_options.dykstra = options_.dykstra;
  ASSIGN_OR_RETURN(SgdPassResult result,
                   SgdPass(model, data_, segment, w_start, stepsize, set,
                           pass_options));
  record_.max_projection_residual = std::max(record_.max_projection_residual,
                                             result.max_projection_residual);
  if (result.start_projected) {
    Warn(absl::StrFormat("SGD pass on [%d, %d) started outside the set",
                         segment.begin, segment.end));
  }
  return result;
}

absl::StatusOr<Eigen::VectorXd> RunContext::Release(
    const std::string& stage, const Segment& segment, double sensitivity,
    double stepsize, const Eigen::VectorXd& point) {
  ASSIGN_OR_RETURN(NoiseSpec spec,
                   ReleaseNoise(sensitivity, budget_, record_.dimension,
                                options_.calibration));
  dpsco::Release release;
  release.id = static_cast<int>(record_.releases.size());
  release.stage = stage;
  release.family = spec.family();
  release.sensitivity = sensitivity;
  release.scale = spec.scale();
  release.stepsize = stepsize;
  release.segment_size = segment.size();

  Eigen::VectorXd out = point;
  if (!options_.disable_noise) out += SampleNoise(spec, rng_);

  record_.sample_ledger.push_back(
      LedgerEntry{next_segment_id_++, segment.begin, segment.end, release.id});
  record_.noise_scales.push_back(release.scale);
  record_.released_iterates.push_back(out);
  record_.releases.push_back(std::move(release));
  return out;
}

void RunContext::MarkUnused(const Segment& segment) {
  if (segment.empty()) return;
  record_.sample_ledger.push_back(LedgerEntry{
      next_segment_id_++, segment.begin, segment.end, kUnusedRelease});
}

double RunContext::ClampStep(const std::string& stage, double eta,
                             const LossModel& model) {
  if (!model.is_smooth()) return eta;
  const double cap = 1.0 / *model.smoothness();
  if (eta <= cap) return eta;
  record_.clamps.push_back(StepClamp{stage, eta, cap});
  return cap;
}

void RunContext::Warn(std::string message) {
  record_.warnings.push_back(std::move(message));
}

RunRecord RunContext::Finish(Eigen::VectorXd final_point) {
  record_.final_point = std::move(final_point);
  return std::move(record_);
}

absl::Status CheckInputs(const LabeledDataset& data, const LossModel& model,
                         const FeasibleSet& set, const Eigen::VectorXd& w0) {
  if (set.dimension() != data.dimension() || w0.size() != data.dimension()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Dimension mismatch: data ", data.dimension(), ", set ",
        set.dimension(), ", start point ", w0.size(), "."));
  }
  if (model.dimension() >= 0 && model.dimension() != data.dimension()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Loss model dimension ", model.dimension(), " does not match data ",
        data.dimension(), "."));
  }
  if (!w0.allFinite()) {
    return absl::InvalidArgumentError("Start point is not finite.");
  }
  return absl::OkStatus();
}

}  // namespace dpsco::internal
