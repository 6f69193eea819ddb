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

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsco/algorithms/drivers.h"
#include "dpsco/algorithms/schedule.h"
#include "dpsco/base/status_macros.h"
#include "src/algorithms/run_context.h"

namespace dpsco {
namespace {

// Hinge with its kink replaced by a quadratic of width s. It lies below the
// hinge by at most s / 2.
double SmoothedHinge(double margin, double s, double* slope) {
  if (margin >= 1.0) {
    *slope = 0.0;
    return 0.0;
  }
  if (margin > 1.0 - s) {
    *slope = -(1.0 - margin) / s;
    return (1.0 - margin) * (1.0 - margin) / (2.0 * s);
  }
  *slope = -1.0;
  return 1.0 - margin - 0.5 * s;
}

// Value of a convex minorant of the loss at (w, x, y); adds scale times its
// gradient into `grad`.
double MinorantValueGrad(const LossModel& model, const Eigen::VectorXd& w,
                         const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                         double s, double scale, Eigen::VectorXd& grad) {
  switch (model.kind()) {
    case LossKind::kHinge: {
      double slope = 0.0;
      const double v = SmoothedHinge(y * w.dot(x), s, &slope);
      if (slope != 0.0) grad.noalias() += (scale * slope * y) * x;
      return v;
    }
    case LossKind::kProximalWrapped: {
      double v = MinorantValueGrad(*model.inner(), w, x, y, s, scale, grad);
      if (std::isfinite(model.gamma())) {
        const Eigen::VectorXd diff = w - model.center();
        grad.noalias() += (scale / model.gamma()) * diff;
        v += diff.squaredNorm() / (2.0 * model.gamma());
      }
      return v;
    }
    default:
      internal::AddGradient(model, w, x, y, scale, grad);
      return internal::Value(model, w, x, y);
  }
}

struct Subproblem {
  const LossModel& model;
  const LabeledDataset& data;
  const Segment& segment;
  const FeasibleSet& set;
  const DykstraOptions& dykstra;
  Eigen::VectorXd center;
  double mu;         // Weight of (mu / 2) ||w - center||^2.
  double smoothing;  // Width of the hinge smoothing.

  double Smoothed(const Eigen::VectorXd& w, Eigen::VectorXd& grad) const {
    grad.setZero(w.size());
    const double inv = 1.0 / static_cast<double>(segment.size());
    double value = 0.0;
    for (int64_t t = segment.begin; t < segment.end; ++t) {
      value += MinorantValueGrad(model, w, data.sample(t).x, data.label(t),
                                 smoothing, inv, grad);
    }
    return value * inv;
  }

  double Prox(const Eigen::VectorXd& w) const {
    return 0.5 * mu * (w - center).squaredNorm();
  }

  double TrueObjective(const Eigen::VectorXd& w) const {
    double value = 0.0;
    for (int64_t t = segment.begin; t < segment.end; ++t) {
      value += internal::Value(model, w, data.sample(t).x, data.label(t));
    }
    return value / static_cast<double>(segment.size()) + Prox(w);
  }

  // Upper bound on TrueObjective(w) - min over the set. The smoothed loss is
  // a convex minorant, so its linearization at w plus the prox term bounds
  // the minimum from below; that bound is minimized in closed form over the
  // set by projecting center - g / mu.
  absl::StatusOr<double> Gap(const Eigen::VectorXd& w) const {
    Eigen::VectorXd g;
    const double fs = Smoothed(w, g);
    const Eigen::VectorXd target = center - g / mu;
    ASSIGN_OR_RETURN(Eigen::VectorXd u, Project(set, target, dykstra));
    const double lower = fs + g.dot(u - w) + Prox(u);
    return std::max(0.0, TrueObjective(w) - lower);
  }
};

struct InnerResult {
  Eigen::VectorXd point;
  double gap = 0.0;
  int iterations = 0;
};

// Accelerated projected gradient with backtracking and function-value
// restarts, stopped by the certificate above.
absl::StatusOr<InnerResult> SolveSubproblem(const Subproblem& p, double target,
                                            int max_iterations) {
  ASSIGN_OR_RETURN(Eigen::VectorXd x, Project(p.set, p.center, p.dykstra));
  Eigen::VectorXd y = x;
  Eigen::VectorXd g;
  double t = 1.0;
  double step_inv = std::max(p.mu, 1.0);
  double fx = p.Smoothed(x, g) + p.Prox(x);

  InnerResult result;
  bool restarted = false;
  ASSIGN_OR_RETURN(result.gap, p.Gap(x));
  for (int it = 1; it <= max_iterations; ++it) {
    if (result.gap <= target) {
      result.point = x;
      result.iterations = it - 1;
      return result;
    }
    const double fy = p.Smoothed(y, g) + p.Prox(y);
    const Eigen::VectorXd gy = g + p.mu * (y - p.center);
    Eigen::VectorXd z;
    double fz = 0.0;
    for (int b = 0; b < 200; ++b) {
      ASSIGN_OR_RETURN(z, Project(p.set, y - gy / step_inv, p.dykstra));
      fz = p.Smoothed(z, g) + p.Prox(z);
      const Eigen::VectorXd dz = z - y;
      if (fz <= fy + gy.dot(dz) + 0.5 * step_inv * dz.squaredNorm() +
                    1e-15 * std::abs(fy)) {
        break;
      }
      step_inv *= 2.0;
    }
    double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if (fz > fx) {
      // Restart the momentum from the last accepted point. Two restarts in
      // a row mean x is optimal to rounding.
      ASSIGN_OR_RETURN(result.gap, p.Gap(x));
      if (restarted && result.gap > target) {
        return absl::DeadlineExceededError(absl::StrFormat(
            "Inner solver stalled after %d iterations with certified gap "
            "%.6g above target %.6g.",
            it, result.gap, target));
      }
      restarted = true;
      t = 1.0;
      y = x;
      continue;
    }
    restarted = false;
    y = z + ((t - 1.0) / t_next) * (z - x);
    x = std::move(z);
    fx = fz;
    t = t_next;
    step_inv = std::max(p.mu, 0.9 * step_inv);
    if (it % 5 == 0 || it == max_iterations) {
      ASSIGN_OR_RETURN(result.gap, p.Gap(x));
    }
  }
  return absl::DeadlineExceededError(absl::StrFormat(
      "Inner solver hit %d iterations with certified gap %.6g above target "
      "%.6g.",
      max_iterations, result.gap, target));
}

}  // namespace

absl::StatusOr<RunRecord> PhasedErm(const LabeledDataset& data,
                                    const LossModel& model,
                                    const FeasibleSet& set,
                                    const Eigen::VectorXd& w0,
                                    const PrivacyBudget& budget,
                                    const PhasedErmConfig& config,
                                    uint64_t seed,
                                    const DriverOptions& options) {
  RETURN_IF_ERROR(internal::CheckInputs(data, model, set, w0));
  if (budget.is_pure()) {
    return absl::InvalidArgumentError(
        "Phased-ERM releases use Gaussian noise and need (epsilon, delta)-DP.");
  }
  if (config.max_inner_iterations < 1) {
    return absl::InvalidArgumentError("max_inner_iterations must be >= 1.");
  }
  internal::RunContext ctx(data, budget, options, seed, "phased_erm",
                           data.dimension());
  if (!Membership(set, w0, options.dykstra.tol)) {
    ctx.Warn("start point was outside the set and has been projected");
  }
  const double lipschitz = model.lipschitz();
  const double distance = config.distance_bound.value_or(set.diameter());
  const double eta = config.eta.has_value()
                         ? *config.eta
                         : DefaultStepsize(distance, lipschitz, data.size(),
                                           data.dimension(), budget);
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Phased-ERM stepsize must be positive, got ", eta, "."));
  }

  ASSIGN_OR_RETURN(std::vector<int64_t> sizes, PhasedSgdSizes(data.size()));
  if (static_cast<int>(sizes.size()) < CeilLog2(data.size())) {
    ctx.Warn("phased: stages with no samples were skipped");
  }
  ASSIGN_OR_RETURN(PartitionResult parts,
                   Partition(data.size(), sizes, LeftoverPolicy::kDrop));
  ctx.MarkUnused(parts.unused);

  Eigen::VectorXd w = w0;
  for (size_t i = 0; i < parts.segments.size(); ++i) {
    const int stage = static_cast<int>(i) + 1;
    const Segment& segment = parts.segments[i];
    const double eta_i = std::ldexp(eta, -2 * stage);
    const double n_i = static_cast<double>(segment.size());
    const double target = lipschitz * lipschitz * eta_i / n_i;
    Subproblem problem{model, data, segment, set, options.dykstra,
                       w, 2.0 / (eta_i * n_i), target};
    absl::StatusOr<InnerResult> inner =
        SolveSubproblem(problem, target, config.max_inner_iterations);
    if (!inner.ok()) {
      return absl::Status(inner.status().code(),
                          absl::StrCat("Phased-ERM stage ", stage, ": ",
                                       inner.status().message()));
    }
    ctx.record().inner_gaps.push_back(inner->gap);
    ctx.record().inner_targets.push_back(target);
    ASSIGN_OR_RETURN(w, ctx.Release(absl::StrCat("erm[", stage, "]"), segment,
                                    lipschitz * eta_i, eta_i, inner->point));
  }
  return ctx.Finish(std::move(w));
}

}  // namespace dpsco
