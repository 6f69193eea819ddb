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

#ifndef DPSCO_CORE_LOSS_H_
#define DPSCO_CORE_LOSS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/core/dataset.h"

namespace dpsco {

enum class LossKind {
  // (<w, x> - y)^2
  kSquaredLinear,
  // log(1 + exp(-y <x, w>)) + (lambda_reg / 2) ||w||^2
  kLogisticL2Reg,
  // max(0, 1 - y <w, x>)
  kHinge,
  // -<w, x> + ||w||^theta / theta; the label is ignored.
  kTncHardInstance,
  // inner(w, x) + ||w - center||^2 / (2 gamma)
  kProximalWrapped,
};

std::string LossKindName(LossKind kind);

// Constants the caller declares for a loss family over its feasible set.
// A missing smoothness means the loss is treated as nonsmooth.
struct LossConstants {
  double lipschitz = 1.0;
  std::optional<double> smoothness;
  double strong_convexity = 0.0;
};

// A loss family f(w, x) together with its declared constants. Immutable;
// copies share the wrapped inner model.
class LossModel {
 public:
  static absl::StatusOr<LossModel> SquaredLinear(const LossConstants& constants);
  static absl::StatusOr<LossModel> LogisticL2Reg(double lambda_reg,
                                                 const LossConstants& constants);
  static absl::StatusOr<LossModel> Hinge(const LossConstants& constants);
  static absl::StatusOr<LossModel> TncHardInstance(
      double theta, const LossConstants& constants);

  // Adds ||w - center||^2 / (2 gamma). `max_center_distance` bounds
  // ||w - center|| over the feasible set and enters the declared Lipschitz
  // constant as L_inner + max_center_distance / gamma. gamma may be +inf, in
  // which case the wrapper is the identity.
  static absl::StatusOr<LossModel> ProximalWrapped(const LossModel& inner,
                                                   Eigen::VectorXd center,
                                                   double gamma,
                                                   double max_center_distance);

  LossKind kind() const { return kind_; }
  double lipschitz() const { return constants_.lipschitz; }
  std::optional<double> smoothness() const { return constants_.smoothness; }
  double strong_convexity() const { return constants_.strong_convexity; }
  bool is_smooth() const { return constants_.smoothness.has_value(); }
  const LossConstants& constants() const { return constants_; }

  double lambda_reg() const { return lambda_reg_; }
  double theta() const { return theta_; }
  double gamma() const { return gamma_; }
  const Eigen::VectorXd& center() const { return center_; }
  // Null unless kind() == kProximalWrapped.
  const LossModel* inner() const { return inner_.get(); }

  // Expected dimension of w, or -1 when any dimension is accepted.
  int dimension() const;

 private:
  LossModel(LossKind kind, const LossConstants& constants)
      : kind_(kind), constants_(constants) {}

  LossKind kind_;
  LossConstants constants_;
  double lambda_reg_ = 0.0;
  double theta_ = 0.0;
  double gamma_ = 0.0;
  Eigen::VectorXd center_;
  std::shared_ptr<const LossModel> inner_;
};

// f(w, x). Fails on a dimension mismatch.
absl::StatusOr<double> LossValue(const LossModel& model,
                                 const Eigen::VectorXd& w, const Sample& x);

// Gradient of f(., x) at w. Hinge returns the subgradient 0 at the kink; the
// hard instance returns -x at w = 0.
absl::StatusOr<Eigen::VectorXd> LossGradient(const LossModel& model,
                                             const Eigen::VectorXd& w,
                                             const Sample& x);

// (1/n) sum_i f(w, x_i) over the whole dataset.
absl::StatusOr<double> EmpiricalRisk(const LossModel& model,
                                     const Eigen::VectorXd& w,
                                     const LabeledDataset& data);

// Same over rows [begin, end). Fails if the range is empty.
absl::StatusOr<double> EmpiricalRisk(const LossModel& model,
                                     const Eigen::VectorXd& w,
                                     const LabeledDataset& data, int64_t begin,
                                     int64_t end);

// (1/n) sum_i grad f(w, x_i) over rows [begin, end).
absl::StatusOr<Eigen::VectorXd> EmpiricalGradient(const LossModel& model,
                                                  const Eigen::VectorXd& w,
                                                  const LabeledDataset& data,
                                                  int64_t begin, int64_t end);

namespace internal {

// Unchecked kernels for hot loops; callers guarantee matching dimensions.
double Value(const LossModel& model, const Eigen::VectorXd& w,
             const Eigen::Ref<const Eigen::VectorXd>& x, double y);
void AddGradient(const LossModel& model, const Eigen::VectorXd& w,
                 const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                 double scale, Eigen::VectorXd& out);

}  // namespace internal
}  // namespace dpsco

#endif  // DPSCO_CORE_LOSS_H_
