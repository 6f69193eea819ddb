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

#ifndef DPSCO_ALGORITHMS_SCHEDULE_H_
#define DPSCO_ALGORITHMS_SCHEDULE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpsco/core/privacy_budget.h"

namespace dpsco {

inline constexpr double kNotApplicable =
    std::numeric_limits<double>::quiet_NaN();

struct StageRow {
  int index = 0;  // 1-based
  int64_t size = 0;
  double stepsize = kNotApplicable;
  double radius = kNotApplicable;
  double noise_scale = kNotApplicable;
};

struct Schedule {
  std::string algorithm;
  std::vector<StageRow> stages;
  std::vector<std::string> notes;

  int64_t SamplesUsed() const;
};

// Smallest k with 2^k >= n.
int CeilLog2(int64_t n);

// Floor that forgives representation error just below an integer.
int64_t FloorCount(double x);

// (D/L) * min{4/sqrt(n), eps/(2 sqrt(d ln(1/delta)))}, or with eps/d under
// pure DP.
double DefaultStepsize(double distance, double lipschitz, int64_t n,
                       int dimension, const PrivacyBudget& budget);

// n >> i for i = 1..ceil(log2 n), keeping only nonzero sizes.
absl::StatusOr<std::vector<int64_t>> PhasedSgdSizes(int64_t n);

// floor(2^(i-2) n / ln n) for i = 1..ceil(ln ln n).
absl::StatusOr<std::vector<int64_t>> PhasedSgdScSizes(int64_t n);

struct PsaPlan {
  int stages = 0;
  int64_t segment_size = 0;
};
absl::StatusOr<PsaPlan> PlanPsa(int64_t n);

struct Psa2Plan {
  int stages = 0;
  int64_t segment_size = 0;
  double gamma0 = 0.0;
};
absl::StatusOr<Psa2Plan> PlanPsa2(int64_t n, int dimension, double theta,
                                  double tnc_lambda, double lipschitz,
                                  double chi0, const PrivacyBudget& budget);

// floor(2^(i-1) n / (log2 n)^(log_thetabar 2)) for
// i = 1..floor(log_thetabar(2) log2 log2 n).
absl::StatusOr<std::vector<int64_t>> IteratedPhasedSgdSizes(int64_t n,
                                                            double theta_bar);

// Smallest theta_bar for which the iterated schedule's growth condition
// holds at n.
double IteratedThetaBarThreshold(int64_t n);

// Number of doubling epochs n1, 2 n1, ... whose total stays within n / 2.
int EpochCount(int64_t n, int64_t n1);

// Epoch sizes with the leftover samples appended to the final epoch.
absl::StatusOr<std::vector<int64_t>> EpochSizes(int64_t n, int64_t n1);

// ceil(2^(2 tau + 3) kappa).
absl::StatusOr<int64_t> FasterFirstEpochSize(double tau, double kappa);

struct ScheduleQuery {
  std::string algorithm;
  int64_t n = 0;
  int dimension = 10;
  double lipschitz = 1.0;
  std::optional<double> smoothness;
  double strong_convexity = 0.0;
  double epsilon = 1.0;
  double delta = 0.0;  // 0 selects pure DP
  double diameter = 2.0;
  std::optional<double> eta;
  double theta_bar = 2.0;
  double theta = 2.0;
  double tnc_lambda = 1.0;
  std::optional<double> chi0;
  double gamma = 1.0;
  int64_t n1 = 0;
  std::optional<double> eta1;
  double tau = 2.0;
};

// Stage table a driver would execute for the query, for inspection.
absl::StatusOr<Schedule> DescribeSchedule(const ScheduleQuery& query);

}  // namespace dpsco

#endif  // DPSCO_ALGORITHMS_SCHEDULE_H_
