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

#include "dpsco/core/loss.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpsco/base/status_macros.h"

namespace dpsco {
namespace {

absl::Status ValidateConstants(const LossConstants& c) {
  if (!(c.lipschitz > 0) || !std::isfinite(c.lipschitz)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Lipschitz constant must be positive and finite, got ",
                     c.lipschitz, "."));
  }
  if (c.smoothness.has_value() && !(*c.smoothness >= 0)) {
    return absl::InvalidArgumentError("Smoothness must be nonnegative.");
  }
  if (!(c.strong_convexity >= 0)) {
    return absl::InvalidArgumentError("Strong convexity must be nonnegative.");
  }
  return absl::OkStatus();
}

absl::Status CheckDimensions(const LossModel& model, const Eigen::VectorXd& w,
                             const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (w.size() != x.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Dimension mismatch: w has ", w.size(), " entries, sample has ",
        x.size(), "."));
  }
  if (model.dimension() >= 0 && model.dimension() != w.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Dimension mismatch: proximal center has ",
                     model.dimension(), " entries, w has ", w.size(), "."));
  }
  return absl::OkStatus();
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// 1 / (1 + exp(-z)).
double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

std::string LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kSquaredLinear:
      return "squared_linear";
    case LossKind::kLogisticL2Reg:
      return "logistic_l2reg";
    case LossKind::kHinge:
      return "hinge";
    case LossKind::kTncHardInstance:
      return "tnc_hard_instance";
    case LossKind::kProximalWrapped:
      return "proximal_wrapped";
  }
  return "unknown";
}

absl::StatusOr<LossModel> LossModel::SquaredLinear(
    const LossConstants& constants) {
  RETURN_IF_ERROR(ValidateConstants(constants));
  return LossModel(LossKind::kSquaredLinear, constants);
}

absl::StatusOr<LossModel> LossModel::LogisticL2Reg(
    double lambda_reg, const LossConstants& constants) {
  RETURN_IF_ERROR(ValidateConstants(constants));
  if (!(lambda_reg >= 0) || !std::isfinite(lambda_reg)) {
    return absl::InvalidArgumentError(
        "Regularizer weight must be nonnegative and finite.");
  }
  LossModel model(LossKind::kLogisticL2Reg, constants);
  model.lambda_reg_ = lambda_reg;
  return model;
}

absl::StatusOr<LossModel> LossModel::Hinge(const LossConstants& constants) {
  RETURN_IF_ERROR(ValidateConstants(constants));
  return LossModel(LossKind::kHinge, constants);
}

absl::StatusOr<LossModel> LossModel::TncHardInstance(
    double theta, const LossConstants& constants) {
  RETURN_IF_ERROR(ValidateConstants(constants));
  if (!(theta > 1) || !std::isfinite(theta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("TNC exponent must exceed 1, got ", theta, "."));
  }
  LossModel model(LossKind::kTncHardInstance, constants);
  model.theta_ = theta;
  return model;
}

absl::StatusOr<LossModel> LossModel::ProximalWrapped(
    const LossModel& inner, Eigen::VectorXd center, double gamma,
    double max_center_distance) {
  if (!(gamma > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Proximal weight gamma must be positive, got ", gamma,
                     "."));
  }
  if (!(max_center_distance >= 0) || !std::isfinite(max_center_distance)) {
    return absl::InvalidArgumentError(
        "Center distance bound must be nonnegative and finite.");
  }
  if (inner.dimension() >= 0 && inner.dimension() != center.size()) {
    return absl::InvalidArgumentError(
        "Proximal center dimension does not match the inner model.");
  }
  const double inv_gamma = 1.0 / gamma;
  LossConstants constants = inner.constants();
  constants.lipschitz += max_center_distance * inv_gamma;
  if (constants.smoothness.has_value()) *constants.smoothness += inv_gamma;
  constants.strong_convexity += inv_gamma;
  LossModel model(LossKind::kProximalWrapped, constants);
  model.gamma_ = gamma;
  model.center_ = std::move(center);
  model.inner_ = std::make_shared<const LossModel>(inner);
  return model;
}

int LossModel::dimension() const {
  return center_.size() > 0 ? static_cast<int>(center_.size()) : -1;
}

namespace internal {

double Value(const LossModel& model, const Eigen::VectorXd& w,
             const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
  switch (model.kind()) {
    case LossKind::kSquaredLinear: {
      const double r = w.dot(x) - y;
      return r * r;
    }
    case LossKind::kLogisticL2Reg:
      return Softplus(-y * x.dot(w)) + 0.5 * model.lambda_reg() * w.squaredNorm();
    case LossKind::kHinge:
      return std::max(0.0, 1.0 - y * w.dot(x));
    case LossKind::kTncHardInstance:
      return -w.dot(x) + std::pow(w.norm(), model.theta()) / model.theta();
    case LossKind::kProximalWrapped:
      return Value(*model.inner(), w, x, y) +
             (w - model.center()).squaredNorm() / (2.0 * model.gamma());
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void AddGradient(const LossModel& model, const Eigen::VectorXd& w,
                 const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                 double scale, Eigen::VectorXd& out) {
  switch (model.kind()) {
    case LossKind::kSquaredLinear:
      out.noalias() += (scale * 2.0 * (w.dot(x) - y)) * x;
      return;
    case LossKind::kLogisticL2Reg:
      out.noalias() += (-scale * y * Sigmoid(-y * x.dot(w))) * x;
      out.noalias() += (scale * model.lambda_reg()) * w;
      return;
    case LossKind::kHinge:
      // Subgradient 0 at the kink.
      if (1.0 - y * w.dot(x) > 0) out.noalias() -= (scale * y) * x;
      return;
    case LossKind::kTncHardInstance: {
      out.noalias() -= scale * x;
      const double norm = w.norm();
      if (norm > 0) {
        out.noalias() += (scale * std::pow(norm, model.theta() - 2.0)) * w;
      }
      return;
    }
    case LossKind::kProximalWrapped:
      AddGradient(*model.inner(), w, x, y, scale, out);
      out.noalias() += (scale / model.gamma()) * (w - model.center());
      return;
  }
}

}  // namespace internal

absl::StatusOr<double> LossValue(const LossModel& model,
                                 const Eigen::VectorXd& w, const Sample& x) {
  RETURN_IF_ERROR(CheckDimensions(model, w, x.x));
  return internal::Value(model, w, x.x, x.y);
}

absl::StatusOr<Eigen::VectorXd> LossGradient(const LossModel& model,
                                             const Eigen::VectorXd& w,
                                             const Sample& x) {
  RETURN_IF_ERROR(CheckDimensions(model, w, x.x));
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(w.size());
  internal::AddGradient(model, w, x.x, x.y, 1.0, grad);
  return grad;
}

absl::StatusOr<double> EmpiricalRisk(const LossModel& model,
                                     const Eigen::VectorXd& w,
                                     const LabeledDataset& data) {
  return EmpiricalRisk(model, w, data, 0, data.size());
}

absl::StatusOr<double> EmpiricalRisk(const LossModel& model,
                                     const Eigen::VectorXd& w,
                                     const LabeledDataset& data, int64_t begin,
                                     int64_t end) {
  if (begin < 0 || end > data.size() || begin >= end) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Empirical risk needs a nonempty row range, got [", begin, ", ", end,
        ")."));
  }
  RETURN_IF_ERROR(CheckDimensions(model, w, data.sample(begin).x));
  double total = 0.0;
  for (int64_t i = begin; i < end; ++i) {
    total += internal::Value(model, w, data.sample(i).x, data.label(i));
  }
  return total / static_cast<double>(end - begin);
}

absl::StatusOr<Eigen::VectorXd> EmpiricalGradient(const LossModel& model,
                                                  const Eigen::VectorXd& w,
                                                  const LabeledDataset& data,
                                                  int64_t begin, int64_t end) {
  if (begin < 0 || end > data.size() || begin >= end) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Empirical gradient needs a nonempty row range, got [", begin, ", ",
        end, ")."));
  }
  RETURN_IF_ERROR(CheckDimensions(model, w, data.sample(begin).x));
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(w.size());
  const double scale = 1.0 / static_cast<double>(end - begin);
  for (int64_t i = begin; i < end; ++i) {
    internal::AddGradient(model, w, data.sample(i).x, data.label(i), scale,
                          grad);
  }
  return grad;
}

}  // namespace dpsco
