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
#include <string>
#include <vector>

#include "boost/multiprecision/cpp_bin_float.hpp"
#include "dpsco/algorithms/schedule.h"
#include "dpsco/core/privacy_budget.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpsco {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

double Rel(double got, const Big& want) {
  return static_cast<double>(abs((Big(got) - want) / want));
}

TEST(HelpersTest, CeilLog2AndFloorCount) {
  EXPECT_EQ(CeilLog2(1), 0);
  EXPECT_EQ(CeilLog2(2), 1);
  EXPECT_EQ(CeilLog2(1000), 10);
  EXPECT_EQ(CeilLog2(1024), 10);
  EXPECT_EQ(CeilLog2(1025), 11);
  EXPECT_EQ(FloorCount(2.9999999999999996), 3);
  EXPECT_EQ(FloorCount(2.5), 2);
}

TEST(PhasedSgdSizesTest, Halving) {
  ASSERT_OK_AND_ASSIGN(std::vector<int64_t> sizes, PhasedSgdSizes(1024));
  std::vector<int64_t> want;
  for (int64_t s = 512; s >= 1; s /= 2) want.push_back(s);
  EXPECT_EQ(sizes, want);
  ASSERT_OK_AND_ASSIGN(sizes, PhasedSgdSizes(10));
  EXPECT_EQ(sizes, (std::vector<int64_t>{5, 2, 1}));
  EXPECT_FALSE(PhasedSgdSizes(0).ok());
}

TEST(PhasedSgdScSizesTest, MillionSamples) {
  ASSERT_OK_AND_ASSIGN(std::vector<int64_t> sizes, PhasedSgdScSizes(1000000));
  ASSERT_EQ(sizes.size(), 3u);
  EXPECT_EQ(sizes[0], 36191);
  const double base = 1e6 / std::log(1e6);
  EXPECT_EQ(sizes[1], static_cast<int64_t>(base));
  EXPECT_EQ(sizes[2], static_cast<int64_t>(2 * base));
  EXPECT_FALSE(PhasedSgdScSizes(2).ok());
}

TEST(PsaPlanTest, Examples) {
  ASSERT_OK_AND_ASSIGN(PsaPlan plan, PlanPsa(1024));
  EXPECT_EQ(plan.stages, 2);
  EXPECT_EQ(plan.segment_size, 512);
  EXPECT_FALSE(PlanPsa(255).ok());
}

TEST(Psa2PlanTest, GoldenPlanAndGamma) {
  ASSERT_OK_AND_ASSIGN(
      Psa2Plan plan,
      PlanPsa2(10000, 10, 2.0, 1.0, 1.0, 1.0, *PrivacyBudget::Pure(1.0)));
  EXPECT_EQ(plan.stages, 13);
  EXPECT_EQ(plan.segment_size, 769);
  const Big n0(769);
  const Big gamma0 = 1 / (6400 * (1 / n0 + 100 / (n0 * n0)));
  EXPECT_LE(Rel(plan.gamma0, gamma0), 1e-13);
  EXPECT_NEAR(plan.gamma0, 0.10633, 1e-5);
}

TEST(Psa2PlanTest, Errors) {
  const PrivacyBudget pure = *PrivacyBudget::Pure(1.0);
  EXPECT_FALSE(PlanPsa2(10000, 10, 1.0, 1.0, 1.0, 1.0, pure).ok());
  EXPECT_FALSE(PlanPsa2(10000, 10, 2.0, 0.0, 1.0, 1.0, pure).ok());
  // Too few samples for a single stage.
  EXPECT_FALSE(PlanPsa2(10, 10, 2.0, 1.0, 1.0, 1.0, pure).ok());
}

TEST(IteratedSizesTest, Golden) {
  ASSERT_OK_AND_ASSIGN(std::vector<int64_t> sizes,
                       IteratedPhasedSgdSizes(65536, 2.0));
  EXPECT_EQ(sizes, (std::vector<int64_t>{4096, 8192, 16384, 32768}));
  EXPECT_FALSE(IteratedPhasedSgdSizes(65536, 1.0).ok());
  EXPECT_FALSE(IteratedPhasedSgdSizes(3, 2.0).ok());
}

TEST(IteratedSizesTest, ThresholdIsPositiveBelowTwo) {
  const double t = IteratedThetaBarThreshold(65536);
  // 16^(1/15).
  EXPECT_NEAR(t, std::pow(16.0, 1.0 / 15.0), 1e-12);
}

TEST(EpochSizesTest, Golden) {
  ASSERT_OK_AND_ASSIGN(std::vector<int64_t> sizes, EpochSizes(1600, 50));
  EXPECT_EQ(sizes, (std::vector<int64_t>{50, 100, 200, 1250}));
  EXPECT_EQ(EpochCount(1600, 50), 4);
  EXPECT_EQ(EpochCount(99, 50), 0);
  EXPECT_EQ(EpochCount(100, 50), 1);
  EXPECT_FALSE(EpochSizes(99, 50).ok());
  EXPECT_FALSE(EpochSizes(100, 0).ok());
}

TEST(FasterFirstEpochTest, Examples) {
  ASSERT_OK_AND_ASSIGN(int64_t n1, FasterFirstEpochSize(2.0, 4.0));
  EXPECT_EQ(n1, 512);
  ASSERT_OK_AND_ASSIGN(n1, FasterFirstEpochSize(1.5, 1.0));
  EXPECT_EQ(n1, 64);
  EXPECT_FALSE(FasterFirstEpochSize(1.0, 4.0).ok());
  EXPECT_FALSE(FasterFirstEpochSize(2.0, 0.5).ok());
}

TEST(DefaultStepsizeTest, PicksTheSmallerTerm) {
  const PrivacyBudget approx = *PrivacyBudget::Approximate(1.0, 1e-5);
  const double priv = 1.0 / (2.0 * std::sqrt(10 * std::log(1e5)));
  EXPECT_NEAR(DefaultStepsize(2.0, 1.0, 1024, 10, approx), 2.0 * priv, 1e-15);
  EXPECT_NEAR(DefaultStepsize(2.0, 1.0, 4, 10, *PrivacyBudget::Pure(100.0)),
              2.0 * 2.0, 1e-15);
  EXPECT_NEAR(DefaultStepsize(1.0, 2.0, 1 << 20, 5, *PrivacyBudget::Pure(1.0)),
              0.5 * 4.0 / 1024.0, 1e-15);
}

ScheduleQuery Query(const std::string& algorithm, int64_t n) {
  ScheduleQuery q;
  q.algorithm = algorithm;
  q.n = n;
  q.dimension = 10;
  q.lipschitz = 1.0;
  q.epsilon = 1.0;
  q.delta = 1e-5;
  q.diameter = 2.0;
  return q;
}

TEST(DescribeScheduleTest, PhasedSgdNoise) {
  ScheduleQuery q = Query("phased_sgd", 1024);
  q.eta = 0.04;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  ASSERT_EQ(s.stages.size(), 10u);
  EXPECT_DOUBLE_EQ(s.stages[0].stepsize, 0.01);
  EXPECT_DOUBLE_EQ(s.stages[1].stepsize, 0.0025);
  const Big want = 4 * Big("0.01") * sqrt(log(1 / Big("1e-5")));
  EXPECT_LE(Rel(s.stages[0].noise_scale, want), 1e-13);
  EXPECT_NEAR(s.stages[0].noise_scale, 0.1357229, 1e-7);
  EXPECT_EQ(s.SamplesUsed(), 1023);
}

TEST(DescribeScheduleTest, PhasedSgdFirstStageNoise) {
  ScheduleQuery q = Query("phased_sgd", 1024);
  q.eta = 0.01;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  const Big want = 4 * Big("0.0025") * sqrt(log(1 / Big("1e-5")));
  EXPECT_LE(Rel(s.stages[0].noise_scale, want), 1e-13);
  EXPECT_NEAR(s.stages[0].noise_scale, 0.0339307, 1e-7);
}

TEST(DescribeScheduleTest, PhasedSgdClampsToSmoothness) {
  ScheduleQuery q = Query("phased_sgd", 1024);
  q.eta = 10.0;
  q.smoothness = 2.0;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  EXPECT_DOUBLE_EQ(s.stages[0].stepsize, 0.5 / 4.0);
  ASSERT_FALSE(s.notes.empty());
  EXPECT_NE(s.notes[0].find("clamped"), std::string::npos);
}

TEST(DescribeScheduleTest, PhasedErmTargets) {
  ScheduleQuery q = Query("phased_erm", 1024);
  q.eta = 0.01;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  // L^2 eta_1 / n_1 = 0.0025 / 512.
  ASSERT_FALSE(s.notes.empty());
  EXPECT_NE(s.notes[0].find("4.88281e-06"), std::string::npos) << s.notes[0];
  q.delta = 0.0;
  EXPECT_FALSE(DescribeSchedule(q).ok());
}

TEST(DescribeScheduleTest, EpochNoiseUsesStability) {
  ScheduleQuery q = Query("epoch_dp_sgd", 1600);
  q.strong_convexity = 0.5;
  q.n1 = 50;
  q.eta1 = 0.1;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  ASSERT_EQ(s.stages.size(), 4u);
  EXPECT_DOUBLE_EQ(s.stages[3].stepsize, 0.1 / 8);
  // 4 * (2 L^2 / (lambda n_1)) sqrt(ln 1/delta) / eps.
  const Big want =
      4 * (Big(2) / (Big("0.5") * 50)) * sqrt(log(1 / Big("1e-5")));
  EXPECT_LE(Rel(s.stages[0].noise_scale, want), 1e-13);
  q.eta1.reset();
  EXPECT_FALSE(DescribeSchedule(q).ok());
  q.eta1 = 0.1;
  q.strong_convexity = 0.0;
  EXPECT_FALSE(DescribeSchedule(q).ok());
}

TEST(DescribeScheduleTest, EpochNoiseExample) {
  ScheduleQuery q = Query("epoch_dp_sgd", 600);
  q.strong_convexity = 0.5;
  q.n1 = 100;
  q.eta1 = 0.1;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  ASSERT_EQ(s.stages.size(), 2u);
  ASSERT_EQ(s.stages[0].size, 100);
  EXPECT_EQ(s.stages[1].size, 500);
  const Big want = 8 * sqrt(log(1 / Big("1e-5"))) / (100 * Big("0.5"));
  EXPECT_LE(Rel(s.stages[0].noise_scale, want), 1e-13);
  EXPECT_NEAR(s.stages[0].noise_scale, 0.542891, 1e-6);
}

TEST(DescribeScheduleTest, FasterSplitsTheData) {
  ScheduleQuery q = Query("faster_dpsgd_sc", 1 << 16);
  q.smoothness = 4.0;
  q.strong_convexity = 1.0;
  q.tau = 2.0;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  EXPECT_EQ(s.stages[0].size, 512);
  EXPECT_DOUBLE_EQ(s.stages[0].stepsize, 1.0 / 16.0);
  int64_t epochs = 0;
  for (const StageRow& row : s.stages) epochs += row.size;
  EXPECT_EQ(epochs, (1 << 16) / 2);
}

TEST(DescribeScheduleTest, Psa2ReportsGamma) {
  ScheduleQuery q = Query("psa2", 10000);
  q.delta = 0.0;
  q.chi0 = 1.0;
  ASSERT_OK_AND_ASSIGN(Schedule s, DescribeSchedule(q));
  ASSERT_EQ(s.stages.size(), 13u);
  EXPECT_NEAR(s.stages[0].stepsize * 2, 0.10633, 1e-5);
  EXPECT_TRUE(std::isnan(s.stages[0].noise_scale));
}

TEST(DescribeScheduleTest, UnknownAlgorithm) {
  EXPECT_FALSE(DescribeSchedule(Query("sgd", 1024)).ok());
}

TEST(DescribeScheduleTest, NeverUsesMoreThanN) {
  const std::vector<std::string> algorithms = {
      "phased_sgd", "phased_erm",          "phased_sgd_sc", "psa",
      "psa2",       "iterated_phased_sgd", "epoch_dp_sgd",  "faster_dpsgd_sc"};
  int ok = 0;
  for (const std::string& a : algorithms) {
    for (int64_t n = 256; n <= (1 << 20); n = n * 3 + 1) {
      for (double theta_bar : {1.3, 2.0, 3.0}) {
        ScheduleQuery q = Query(a, n);
        q.smoothness = 1.0;
        q.strong_convexity = 0.25;
        q.theta_bar = theta_bar;
        q.n1 = 20;
        q.eta1 = 0.5;
        q.tau = 1.5;
        absl::StatusOr<Schedule> s = DescribeSchedule(q);
        if (!s.ok()) continue;
        ++ok;
        EXPECT_LE(s->SamplesUsed(), n) << a << " n=" << n;
        for (const StageRow& row : s->stages) EXPECT_GE(row.size, 1);
      }
    }
  }
  EXPECT_GT(ok, 100);
}

}  // namespace
}  // namespace dpsco
