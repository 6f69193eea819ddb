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

#include "dpsco/geometry/feasible_set.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpsco/base/status_macros.h"

namespace dpsco {
namespace {

absl::Status ValidateRadius(double radius) {
  if (!(radius > 0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Radius must be positive and finite, got ", radius, "."));
  }
  return absl::OkStatus();
}

Eigen::VectorXd ProjectExact(const FeasibleSet& set,
                             const Eigen::VectorXd& point) {
  switch (set.kind()) {
    case FeasibleSet::Kind::kL2Ball:
      return internal::ProjectL2Ball(set.center(), set.radius(), point);
    case FeasibleSet::Kind::kL1Ball:
      return internal::ProjectL1Ball(set.radius(), point);
    case FeasibleSet::Kind::kBox:
      return internal::ProjectBox(set.lower(), set.upper(), point);
    case FeasibleSet::Kind::kIntersection:
      break;
  }
  return point;
}

bool MemberOf(const FeasibleSet& set, const Eigen::VectorXd& point,
              double tol) {
  switch (set.kind()) {
    case FeasibleSet::Kind::kL2Ball:
      return (point - set.center()).norm() <= set.radius() + tol;
    case FeasibleSet::Kind::kL1Ball:
      return point.lpNorm<1>() <= set.radius() + tol;
    case FeasibleSet::Kind::kBox:
      return ((point - set.lower()).array() >= -tol).all() &&
             ((set.upper() - point).array() >= -tol).all();
    case FeasibleSet::Kind::kIntersection:
      return std::all_of(
          set.members().begin(), set.members().end(),
          [&](const FeasibleSet& m) { return MemberOf(m, point, tol); });
  }
  return false;
}

ProjectionReport Dykstra(const FeasibleSet& set, const Eigen::VectorXd& point,
                         const DykstraOptions& options) {
  const std::vector<FeasibleSet>& members = set.members();
  const int d = set.dimension();
  std::vector<Eigen::VectorXd> increments(members.size(),
                                          Eigen::VectorXd::Zero(d));
  ProjectionReport report;
  Eigen::VectorXd x = point;
  Eigen::VectorXd y(d);
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const Eigen::VectorXd cycle_start = x;
    double increment_change = 0.0;
    for (size_t j = 0; j < members.size(); ++j) {
      y = x + increments[j];
      x = ProjectExact(members[j], y);
      const Eigen::VectorXd next = y - x;
      increment_change += (next - increments[j]).squaredNorm();
      increments[j] = next;
    }
    report.iterations = iter;
    report.displacement = (x - cycle_start).norm();
    // x can sit still for whole cycles while the increments are still
    // moving, so both must settle.
    if (report.displacement <= options.tol &&
        std::sqrt(increment_change) <= options.tol) {
      double residual = 0.0;
      for (const FeasibleSet& m : members) {
        residual = std::max(residual, (ProjectExact(m, x) - x).norm());
      }
      report.residual = residual;
      if (residual <= options.tol) {
        report.point = std::move(x);
        report.converged = true;
        return report;
      }
    }
  }
  double residual = 0.0;
  for (const FeasibleSet& m : members) {
    residual = std::max(residual, (ProjectExact(m, x) - x).norm());
  }
  report.residual = residual;
  report.point = std::move(x);
  report.converged = false;
  return report;
}

}  // namespace

absl::StatusOr<FeasibleSet> FeasibleSet::L2Ball(Eigen::VectorXd center,
                                                double radius) {
  RETURN_IF_ERROR(ValidateRadius(radius));
  if (center.size() < 1 || !center.allFinite()) {
    return absl::InvalidArgumentError("Ball center must be finite and nonempty.");
  }
  FeasibleSet set(Kind::kL2Ball, static_cast<int>(center.size()));
  set.center_ = std::move(center);
  set.radius_ = radius;
  set.diameter_ = 2.0 * radius;
  return set;
}

absl::StatusOr<FeasibleSet> FeasibleSet::L1Ball(int dimension, double radius) {
  RETURN_IF_ERROR(ValidateRadius(radius));
  if (dimension < 1) {
    return absl::InvalidArgumentError("Dimension must be at least 1.");
  }
  FeasibleSet set(Kind::kL1Ball, dimension);
  set.radius_ = radius;
  set.diameter_ = 2.0 * radius;
  return set;
}

absl::StatusOr<FeasibleSet> FeasibleSet::Box(Eigen::VectorXd lower,
                                             Eigen::VectorXd upper) {
  if (lower.size() < 1 || lower.size() != upper.size()) {
    return absl::InvalidArgumentError(
        "Box bounds must be nonempty and of equal length.");
  }
  if (!lower.allFinite() || !upper.allFinite()) {
    return absl::InvalidArgumentError("Box bounds must be finite.");
  }
  if (((upper - lower).array() < 0).any()) {
    return absl::InvalidArgumentError(
        "Box needs lower <= upper in every coordinate.");
  }
  FeasibleSet set(Kind::kBox, static_cast<int>(lower.size()));
  set.diameter_ = (upper - lower).norm();
  set.lower_ = std::move(lower);
  set.upper_ = std::move(upper);
  return set;
}

absl::StatusOr<FeasibleSet> FeasibleSet::Intersection(
    std::vector<FeasibleSet> members) {
  if (members.empty()) {
    return absl::InvalidArgumentError("Intersection needs at least one set.");
  }
  std::vector<FeasibleSet> flat;
  for (FeasibleSet& m : members) {
    if (m.kind() == Kind::kIntersection) {
      flat.insert(flat.end(), m.members_.begin(), m.members_.end());
    } else {
      flat.push_back(std::move(m));
    }
  }
  const int d = flat.front().dimension();
  double diameter = std::numeric_limits<double>::infinity();
  for (const FeasibleSet& m : flat) {
    if (m.dimension() != d) {
      return absl::InvalidArgumentError(
          "Intersection members must share one dimension.");
    }
    diameter = std::min(diameter, m.diameter());
  }
  FeasibleSet set(Kind::kIntersection, d);
  set.members_ = std::move(flat);
  set.diameter_ = diameter;
  return set;
}

std::string FeasibleSet::DebugString() const {
  switch (kind_) {
    case Kind::kL2Ball:
      return absl::StrCat("l2_ball(d=", dimension_, ", r=", radius_, ")");
    case Kind::kL1Ball:
      return absl::StrCat("l1_ball(d=", dimension_, ", r=", radius_, ")");
    case Kind::kBox:
      return absl::StrCat("box(d=", dimension_, ")");
    case Kind::kIntersection:
      return absl::StrCat(
          "intersection(",
          absl::StrJoin(members_, ", ",
                        [](std::string* out, const FeasibleSet& m) {
                          out->append(m.DebugString());
                        }),
          ")");
  }
  return "unknown";
}

absl::StatusOr<ProjectionReport> ProjectWithReport(
    const FeasibleSet& set, const Eigen::VectorXd& point,
    const DykstraOptions& options) {
  if (point.size() != set.dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Point has dimension ", point.size(), ", set has ",
                     set.dimension(), "."));
  }
  if (set.kind() != FeasibleSet::Kind::kIntersection) {
    ProjectionReport report;
    report.point = ProjectExact(set, point);
    return report;
  }
  if (MemberOf(set, point, 0.0)) {
    ProjectionReport report;
    report.point = point;
    return report;
  }
  return Dykstra(set, point, options);
}

absl::StatusOr<Eigen::VectorXd> Project(const FeasibleSet& set,
                                        const Eigen::VectorXd& point,
                                        const DykstraOptions& options) {
  ASSIGN_OR_RETURN(ProjectionReport report,
                   ProjectWithReport(set, point, options));
  if (!report.converged) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Dykstra projection onto ", set.DebugString(),
        " did not converge in ", report.iterations,
        " cycles; residual=", report.residual,
        ", last displacement=", report.displacement, "."));
  }
  return std::move(report.point);
}

bool Membership(const FeasibleSet& set, const Eigen::VectorXd& point,
                double tol) {
  if (point.size() != set.dimension()) return false;
  return MemberOf(set, point, tol);
}

namespace internal {

Eigen::VectorXd ProjectL2Ball(const Eigen::VectorXd& center, double radius,
                              const Eigen::VectorXd& point) {
  const double dist = (point - center).norm();
  if (dist <= radius) return point;
  return center + (radius / dist) * (point - center);
}

// Sort-and-threshold: the projection soft-thresholds |p| at the unique tau
// with sum_i max(|p_i| - tau, 0) = radius.
Eigen::VectorXd ProjectL1Ball(double radius, const Eigen::VectorXd& point) {
  if (point.lpNorm<1>() <= radius) return point;
  std::vector<double> mags(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) mags[i] = std::abs(point[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (size_t j = 0; j < mags.size(); ++j) {
    cumsum += mags[j];
    const double candidate = (cumsum - radius) / static_cast<double>(j + 1);
    if (mags[j] - candidate > 0) tau = candidate;
  }
  Eigen::VectorXd out(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    const double shrunk = std::max(std::abs(point[i]) - tau, 0.0);
    out[i] = std::copysign(shrunk, point[i]);
  }
  return out;
}

Eigen::VectorXd ProjectBox(const Eigen::VectorXd& lower,
                           const Eigen::VectorXd& upper,
                           const Eigen::VectorXd& point) {
  return point.cwiseMax(lower).cwiseMin(upper);
}

}  // namespace internal
}  // namespace dpsco
