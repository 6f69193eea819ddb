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
#include <limits>
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

absl::StatusOr<Eigen::VectorXd> RunPhasedSgdSc(
    RunContext& ctx, const std::string& label, const LossModel& model,
    const FeasibleSet& set, const Segment& range,
    const Eigen::VectorXd& w_start, const Eigen::VectorXd& center,
    double gamma, double distance) {
  absl::StatusOr<std::vector<int64_t>> sizes = PhasedSgdScSizes(range.size());
  if (!sizes.ok()) {
    return absl::Status(sizes.status().code(),
                        absl::StrCat(label, sizes.status().message()));
  }
  ASSIGN_OR_RETURN(PartitionResult parts,
                   Partition(range, *sizes, LeftoverPolicy::kDrop));
  ctx.MarkUnused(parts.unused);

  ASSIGN_OR_RETURN(Eigen::VectorXd projected_center, ctx.Project(set, center));
  const double reach = set.diameter() + (center - projected_center).norm();
  ASSIGN_OR_RETURN(LossModel wrapped,
                   LossModel::ProximalWrapped(model, center, gamma, reach));

  Eigen::VectorXd w = w_start;
  for (size_t t = 0; t < parts.segments.size(); ++t) {
    const std::string stage = absl::StrCat(label, "sc[", t + 1, "]");
    const Segment& segment = parts.segments[t];
    double eta = DefaultStepsize(distance, wrapped.lipschitz(), segment.size(),
                                 ctx.dimension(), ctx.budget());
    eta = ctx.ClampStep(stage, eta, wrapped);
    ASSIGN_OR_RETURN(w, RunPhasedSgd(ctx, stage + "/", wrapped, set, segment,
                                     w, eta));
  }
  return w;
}

absl::StatusOr<Eigen::VectorXd> RunIteratedPhasedSgd(
    RunContext& ctx, const std::string& label, const LossModel& model,
    const FeasibleSet& set, const Segment& range,
    const Eigen::VectorXd& w_start, double theta_bar, double distance) {
  ASSIGN_OR_RETURN(std::vector<int64_t> sizes,
                   IteratedPhasedSgdSizes(range.size(), theta_bar));
  const double threshold = IteratedThetaBarThreshold(range.size());
  if (theta_bar < threshold) {
    ctx.Warn(absl::StrFormat(
        "%siterated: theta_bar %.6g is below %.6g required for n = %d", label,
        theta_bar, threshold, range.size()));
  }
  ASSIGN_OR_RETURN(PartitionResult parts,
                   Partition(range, sizes, LeftoverPolicy::kDrop));
  ctx.MarkUnused(parts.unused);

  Eigen::VectorXd w = w_start;
  for (size_t t = 0; t < parts.segments.size(); ++t) {
    const std::string stage = absl::StrCat(label, "iterated[", t + 1, "]");
    const Segment& segment = parts.segments[t];
    double eta = DefaultStepsize(distance, model.lipschitz(), segment.size(),
                                 ctx.dimension(), ctx.budget());
    eta = ctx.ClampStep(stage, eta, model);
    ASSIGN_OR_RETURN(
        w, RunPhasedSgd(ctx, stage + "/", model, set, segment, w, eta));
  }
  return w;
}

}  // namespace internal

namespace {

void WarnIfOutside(internal::RunContext& ctx, const FeasibleSet& set,
                   const Eigen::VectorXd& w0) {
  if (!Membership(set, w0, ctx.options().dykstra.tol)) {
    ctx.Warn("start point was outside the set and has been projected");
  }
}

absl::Status CheckPositive(const char* name, double value) {
  if (!(value > 0.0) || std::isnan(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be positive, got ", value, "."));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<RunRecord> PhasedSgdSc(const LabeledDataset& data,
                                      const LossModel& model,
                                      const FeasibleSet& set,
                                      const Eigen::VectorXd& w0,
                                      const PrivacyBudget& budget,
                                      const PhasedSgdScConfig& config,
                                      uint64_t seed,
                                      const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w0));
  RETURN_IF_ERROR(CheckPositive("gamma", config.gamma));
  const double distance = config.distance_bound.value_or(set.diameter());
  RETURN_IF_ERROR(CheckPositive("distance bound", distance));
  internal::RunContext ctx(data, budget, options, seed, "phased_sgd_sc",
                           data.dimension());
  WarnIfOutside(ctx, set, w0);
  ASSIGN_OR_RETURN(
      Eigen::VectorXd w,
      internal::RunPhasedSgdSc(ctx, "", model, set, Segment{0, data.size(), 0},
                               w0, w0, config.gamma, distance));
  return ctx.Finish(std::move(w));
}

absl::StatusOr<RunRecord> Psa(const LabeledDataset& data,
                              const LossModel& model, const FeasibleSet& set,
                              const Eigen::VectorXd& w1,
                              const PrivacyBudget& budget,
                              const PsaConfig& config, uint64_t seed,
                              const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w1));
  ASSIGN_OR_RETURN(PsaPlan plan, PlanPsa(data.size()));
  double radius = config.initial_radius.value_or(set.diameter());
  RETURN_IF_ERROR(CheckPositive("initial radius", radius));
  internal::RunContext ctx(data, budget, options, seed, "psa",
                           data.dimension());
  WarnIfOutside(ctx, set, w1);

  const std::vector<int64_t> sizes(plan.stages, plan.segment_size);
  ASSIGN_OR_RETURN(PartitionResult parts,
                   Partition(data.size(), sizes, LeftoverPolicy::kDrop));
  ctx.MarkUnused(parts.unused);

  Eigen::VectorXd w = w1;
  for (int k = 1; k <= plan.stages; ++k) {
    const std::string stage = absl::StrCat("psa[", k, "]");
    ASSIGN_OR_RETURN(Eigen::VectorXd center, ctx.Project(set, w));
    double gamma = DefaultStepsize(radius, model.lipschitz(),
                                   plan.segment_size, data.dimension(), budget);
    gamma = ctx.ClampStep(stage, gamma, model);
    ASSIGN_OR_RETURN(FeasibleSet ball, FeasibleSet::L2Ball(center, radius));
    ASSIGN_OR_RETURN(FeasibleSet local, FeasibleSet::Intersection({set, ball}));
    ASSIGN_OR_RETURN(w, internal::RunPhasedSgd(ctx, stage + "/", model, local,
                                               parts.segments[k - 1], center,
                                               gamma));
    radius /= 2.0;
  }
  return ctx.Finish(std::move(w));
}

absl::StatusOr<RunRecord> Psa2(const LabeledDataset& data,
                               const LossModel& model, const FeasibleSet& set,
                               const Eigen::VectorXd& w0,
                               const PrivacyBudget& budget,
                               const Psa2Config& config, uint64_t seed,
                               const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w0));
  const double chi0 =
      config.chi0.value_or(model.lipschitz() * set.diameter());
  const double distance = config.distance_bound.value_or(set.diameter());
  RETURN_IF_ERROR(CheckPositive("distance bound", distance));
  ASSIGN_OR_RETURN(Psa2Plan plan,
                   PlanPsa2(data.size(), data.dimension(), config.theta,
                            config.tnc_lambda, model.lipschitz(), chi0,
                            budget));
  internal::RunContext ctx(data, budget, options, seed, "psa2",
                           data.dimension());
  WarnIfOutside(ctx, set, w0);
  if (plan.gamma0 < set.diameter() / model.lipschitz()) {
    ctx.Warn(absl::StrFormat("psa2: gamma0 %.6g is below diameter / L = %.6g",
                             plan.gamma0, set.diameter() / model.lipschitz()));
  }

  const std::vector<int64_t> sizes(plan.stages, plan.segment_size);
  ASSIGN_OR_RETURN(PartitionResult parts,
                   Partition(data.size(), sizes, LeftoverPolicy::kDrop));
  ctx.MarkUnused(parts.unused);

  ASSIGN_OR_RETURN(Eigen::VectorXd w, ctx.Project(set, w0));
  for (int k = 1; k <= plan.stages; ++k) {
    const double gamma = std::ldexp(plan.gamma0, -k);
    ASSIGN_OR_RETURN(
        Eigen::VectorXd next,
        internal::RunPhasedSgdSc(ctx, absl::StrCat("psa2[", k, "]/"), model,
                                 set, parts.segments[k - 1], w, w, gamma,
                                 distance));
    ctx.record().trajectory.push_back(next);
    w = std::move(next);
  }

  if (config.selection_data != nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& candidate : ctx.record().trajectory) {
      ASSIGN_OR_RETURN(double risk,
                       EmpiricalRisk(model, candidate, *config.selection_data));
      if (risk < best) {
        best = risk;
        ctx.record().selected = candidate;
      }
    }
    ctx.record().selection_is_nonprivate = true;
  }
  return ctx.Finish(std::move(w));
}

absl::StatusOr<RunRecord> IteratedPhasedSgd(
    const LabeledDataset& data, const LossModel& model, const FeasibleSet& set,
    const Eigen::VectorXd& w0, const PrivacyBudget& budget,
    const IteratedPhasedSgdConfig& config, uint64_t seed,
    const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w0));
  const double distance = config.distance_bound.value_or(set.diameter());
  RETURN_IF_ERROR(CheckPositive("distance bound", distance));
  internal::RunContext ctx(data, budget, options, seed, "iterated_phased_sgd",
                           data.dimension());
  WarnIfOutside(ctx, set, w0);
  ASSIGN_OR_RETURN(Eigen::VectorXd w,
                   internal::RunIteratedPhasedSgd(
                       ctx, "", model, set, Segment{0, data.size(), 0}, w0,
                       config.theta_bar, distance));
  return ctx.Finish(std::move(w));
}

}  // namespace dpsco
