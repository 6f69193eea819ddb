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

#ifndef DPSCO_GEOMETRY_FEASIBLE_SET_H_
#define DPSCO_GEOMETRY_FEASIBLE_SET_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace dpsco {

// A closed convex constraint region with an exact Euclidean projection, or
// an intersection of such regions projected with Dykstra's method.
class FeasibleSet {
 public:
  enum class Kind { kL2Ball, kL1Ball, kBox, kIntersection };

  static absl::StatusOr<FeasibleSet> L2Ball(Eigen::VectorXd center,
                                            double radius);
  // Centered at the origin.
  static absl::StatusOr<FeasibleSet> L1Ball(int dimension, double radius);
  static absl::StatusOr<FeasibleSet> Box(Eigen::VectorXd lower,
                                         Eigen::VectorXd upper);
  // Nested intersections are flattened; all members share one dimension.
  static absl::StatusOr<FeasibleSet> Intersection(
      std::vector<FeasibleSet> members);

  Kind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  // sup ||w - w'|| over the set; for intersections the smallest member
  // diameter, which upper-bounds it.
  double diameter() const { return diameter_; }

  // kL2Ball only.
  const Eigen::VectorXd& center() const { return center_; }
  // kL2Ball and kL1Ball.
  double radius() const { return radius_; }
  // kBox only.
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  // kIntersection only; never themselves intersections.
  const std::vector<FeasibleSet>& members() const { return members_; }

  std::string DebugString() const;

 private:
  FeasibleSet(Kind kind, int dimension) : kind_(kind), dimension_(dimension) {}

  Kind kind_;
  int dimension_ = 0;
  double diameter_ = 0.0;
  double radius_ = 0.0;
  Eigen::VectorXd center_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  std::vector<FeasibleSet> members_;
};

struct DykstraOptions {
  // Stop once one full cycle moves the iterate by at most `tol` and the
  // iterate is within `tol` of every member.
  double tol = 1e-8;
  int max_iter = 10000;
};

struct ProjectionReport {
  Eigen::VectorXd point;
  // Dykstra cycles; 0 for closed-form projections.
  int iterations = 0;
  // Largest distance from `point` to a member set (0 for exact kinds).
  double residual = 0.0;
  // Displacement over the last cycle.
  double displacement = 0.0;
  bool converged = true;
};

// Euclidean projection. Fails on a dimension mismatch, or for intersections
// when Dykstra does not converge within max_iter; the message carries the
// residual and ProjectWithReport exposes the last iterate.
absl::StatusOr<Eigen::VectorXd> Project(const FeasibleSet& set,
                                        const Eigen::VectorXd& point,
                                        const DykstraOptions& options = {});

// Like Project but never fails on non-convergence; check `converged`.
absl::StatusOr<ProjectionReport> ProjectWithReport(
    const FeasibleSet& set, const Eigen::VectorXd& point,
    const DykstraOptions& options = {});

// True iff `point` satisfies every defining inequality within `tol`. False
// on a dimension mismatch.
bool Membership(const FeasibleSet& set, const Eigen::VectorXd& point,
                double tol);

namespace internal {

// Closed-form projections used by Dykstra's inner steps.
Eigen::VectorXd ProjectL2Ball(const Eigen::VectorXd& center, double radius,
                              const Eigen::VectorXd& point);
Eigen::VectorXd ProjectL1Ball(double radius, const Eigen::VectorXd& point);
Eigen::VectorXd ProjectBox(const Eigen::VectorXd& lower,
                           const Eigen::VectorXd& upper,
                           const Eigen::VectorXd& point);

}  // namespace internal
}  // namespace dpsco

#endif  // DPSCO_GEOMETRY_FEASIBLE_SET_H_
