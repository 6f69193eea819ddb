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

#ifndef DPSCO_BENCH_PROBLEM_H_
#define DPSCO_BENCH_PROBLEM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/algorithms/drivers.h"
#include "dpsco/algorithms/run_record.h"
#include "dpsco/core/dataset.h"
#include "dpsco/core/loss.h"
#include "dpsco/core/privacy_budget.h"
#include "dpsco/geometry/feasible_set.h"

namespace dpsco::bench {

enum class ProblemKind { kLinregL1Ball, kLogregL2Ball, kSyntheticTnc };

std::string ProblemKindName(ProblemKind kind);
absl::StatusOr<ProblemKind> ParseProblemKind(std::string_view name);

struct ProblemConfig {
  ProblemKind kind = ProblemKind::kLinregL1Ball;
  // Constraint radius B.
  double radius = 1.0;
  double lambda_reg = 1e-3;
  double theta = 2.0;
  // Feature dimension for synthetic data.
  int dimension = 10;
  // Bound on |y| used to declare the squared-loss Lipschitz constant.
  double label_bound = 1.0;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

// Loss, constraint set and start point with constants valid for rows of
// norm at most 1.
struct Problem {
  LossModel model;
  FeasibleSet set;
  Eigen::VectorXd w0;
};

absl::StatusOr<Problem> BuildProblem(const ProblemConfig& config,
                                     int dimension);

inline constexpr const char* kAlgorithmIds[] = {
    "phased_sgd",          "phased_erm",   "phased_sgd_sc",
    "psa",                 "psa2",         "iterated_phased_sgd",
    "epoch_dp_sgd",        "faster_dpsgd_sc"};

struct AlgorithmConfig {
  std::string id;
  // Column label in results; defaults to the spec string it was parsed from.
  std::string label;
  std::optional<double> eta;
  double theta_bar = 2.0;
  double gamma = 1.0;
  double theta = 2.0;
  double tnc_lambda = 1.0;
  double tau = 2.0;
  int64_t n1 = 0;
  std::optional<double> eta1;

  friend bool operator==(const AlgorithmConfig&,
                         const AlgorithmConfig&) = default;
};

// "id" or "id:value". The value sets theta_bar for iterated_phased_sgd, tau
// for faster_dpsgd_sc, gamma for phased_sgd_sc, theta for psa2, n1 for
// epoch_dp_sgd and eta for phased_sgd and phased_erm.
absl::StatusOr<AlgorithmConfig> ParseAlgorithmSpec(std::string_view spec);

absl::StatusOr<RunRecord> RunAlgorithm(const AlgorithmConfig& algorithm,
                                       const LabeledDataset& train,
                                       const Problem& problem,
                                       const PrivacyBudget& budget,
                                       uint64_t seed,
                                       const DriverOptions& options = {});

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_PROBLEM_H_
