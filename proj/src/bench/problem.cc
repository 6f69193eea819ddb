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

#include "dpsco/bench/problem.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "dpsco/base/status_macros.h"

namespace dpsco::bench {

std::string ProblemKindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kLinregL1Ball:
      return "linreg_l1ball";
    case ProblemKind::kLogregL2Ball:
      return "logreg_l2ball";
    case ProblemKind::kSyntheticTnc:
      return "synthetic_tnc";
  }
  return "unknown";
}

absl::StatusOr<ProblemKind> ParseProblemKind(std::string_view name) {
  if (name == "linreg_l1ball" || name == "linreg_l1") {
    return ProblemKind::kLinregL1Ball;
  }
  if (name == "logreg_l2ball" || name == "logreg_l2") {
    return ProblemKind::kLogregL2Ball;
  }
  if (name == "synthetic_tnc" || name == "tnc") {
    return ProblemKind::kSyntheticTnc;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("Unknown problem '", std::string(name), "'."));
}

absl::StatusOr<Problem> BuildProblem(const ProblemConfig& config,
                                     int dimension) {
  if (dimension < 1) {
    return absl::InvalidArgumentError("Problem dimension must be >= 1.");
  }
  const double b = config.radius;
  if (!(b > 0.0) || !std::isfinite(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Constraint radius must be positive, got ", b, "."));
  }
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(dimension);
  switch (config.kind) {
    case ProblemKind::kLinregL1Ball: {
      // |<w, x>| <= |w|_2 <= |w|_1 <= B.
      LossConstants c;
      c.lipschitz = 2.0 * (b + config.label_bound);
      c.smoothness = 2.0;
      ASSIGN_OR_RETURN(LossModel model, LossModel::SquaredLinear(c));
      ASSIGN_OR_RETURN(FeasibleSet set, FeasibleSet::L1Ball(dimension, b));
      return Problem{std::move(model), std::move(set), origin};
    }
    case ProblemKind::kLogregL2Ball: {
      LossConstants c;
      c.lipschitz = 1.0 + config.lambda_reg * b;
      c.smoothness = 0.25 + config.lambda_reg;
      c.strong_convexity = config.lambda_reg;
      ASSIGN_OR_RETURN(LossModel model,
                       LossModel::LogisticL2Reg(config.lambda_reg, c));
      ASSIGN_OR_RETURN(FeasibleSet set, FeasibleSet::L2Ball(origin, b));
      return Problem{std::move(model), std::move(set), origin};
    }
    case ProblemKind::kSyntheticTnc: {
      const double theta = config.theta;
      LossConstants c;
      c.lipschitz = 1.0 + std::pow(b, theta - 1.0);
      if (theta == 2.0) {
        c.smoothness = 1.0;
        c.strong_convexity = 1.0;
      } else if (theta > 2.0) {
        c.smoothness = (theta - 1.0) * std::pow(b, theta - 2.0);
      }
      ASSIGN_OR_RETURN(LossModel model, LossModel::TncHardInstance(theta, c));
      ASSIGN_OR_RETURN(FeasibleSet set, FeasibleSet::L2Ball(origin, b));
      return Problem{std::move(model), std::move(set), origin};
    }
  }
  return absl::InvalidArgumentError("Unknown problem kind.");
}

absl::StatusOr<AlgorithmConfig> ParseAlgorithmSpec(std::string_view spec) {
  AlgorithmConfig config;
  config.label = std::string(spec);
  const size_t colon = spec.find(':');
  config.id = std::string(spec.substr(0, colon));
  if (std::find(std::begin(kAlgorithmIds), std::end(kAlgorithmIds),
                config.id) == std::end(kAlgorithmIds)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Unknown algorithm '", config.id, "'."));
  }
  if (colon == std::string_view::npos) return config;
  double value = 0.0;
  if (!absl::SimpleAtod(std::string(spec.substr(colon + 1)), &value) ||
      !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Bad parameter in algorithm spec '", std::string(spec), "'."));
  }
  if (config.id == "iterated_phased_sgd") {
    config.theta_bar = value;
  } else if (config.id == "faster_dpsgd_sc") {
    config.tau = value;
  } else if (config.id == "phased_sgd_sc") {
    config.gamma = value;
  } else if (config.id == "psa2") {
    config.theta = value;
  } else if (config.id == "epoch_dp_sgd") {
    config.n1 = static_cast<int64_t>(value);
  } else if (config.id == "phased_sgd" || config.id == "phased_erm") {
    config.eta = value;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("Algorithm '", config.id, "' takes no parameter."));
  }
  return config;
}

absl::StatusOr<RunRecord> RunAlgorithm(const AlgorithmConfig& a,
                                       const LabeledDataset& train,
                                       const Problem& p,
                                       const PrivacyBudget& budget,
                                       uint64_t seed,
                                       const DriverOptions& options) {
  if (a.id == "phased_sgd") {
    PhasedSgdConfig c;
    c.eta = a.eta;
    return PhasedSgd(train, p.model, p.set, p.w0, budget, c, seed, options);
  }
  if (a.id == "phased_erm") {
    PhasedErmConfig c;
    c.eta = a.eta;
    return PhasedErm(train, p.model, p.set, p.w0, budget, c, seed, options);
  }
  if (a.id == "phased_sgd_sc") {
    PhasedSgdScConfig c;
    c.gamma = a.gamma;
    return PhasedSgdSc(train, p.model, p.set, p.w0, budget, c, seed, options);
  }
  if (a.id == "psa") {
    return Psa(train, p.model, p.set, p.w0, budget, PsaConfig{}, seed,
               options);
  }
  if (a.id == "psa2") {
    Psa2Config c;
    c.theta = a.theta;
    c.tnc_lambda = a.tnc_lambda;
    return Psa2(train, p.model, p.set, p.w0, budget, c, seed, options);
  }
  if (a.id == "iterated_phased_sgd") {
    IteratedPhasedSgdConfig c;
    c.theta_bar = a.theta_bar;
    return IteratedPhasedSgd(train, p.model, p.set, p.w0, budget, c, seed,
                             options);
  }
  if (a.id == "epoch_dp_sgd") {
    if (a.n1 < 1) {
      return absl::InvalidArgumentError(
          "epoch_dp_sgd needs n1, e.g. 'epoch_dp_sgd:64'.");
    }
    if (!p.model.is_smooth()) {
      return absl::InvalidArgumentError("epoch_dp_sgd needs a smooth loss.");
    }
    EpochDpSgdConfig c;
    c.n1 = a.n1;
    c.eta1 = a.eta1.value_or(1.0 / (4.0 * *p.model.smoothness()));
    return EpochDpSgd(train, p.model, p.set, p.w0, budget, c, seed, options);
  }
  if (a.id == "faster_dpsgd_sc") {
    FasterDpsgdScConfig c;
    c.tau = a.tau;
    return FasterDpsgdSc(train, p.model, p.set, p.w0, budget, c, seed,
                         options);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("Unknown algorithm '", a.id, "'."));
}

}  // namespace dpsco::bench
