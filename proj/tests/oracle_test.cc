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
#include <random>
#include <vector>

#include "dpsco/core/loss.h"
#include "dpsco/geometry/feasible_set.h"
#include "dpsco/oracle/erm_exact.h"
#include "dpsco/oracle/qp_project.h"
#include "dpsco/oracle/tnc.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpsco::oracle {
namespace {

using ::dpsco::testing::RandomGaussian;
using ::dpsco::testing::RandomInBall;
using ::dpsco::testing::Vec;

FeasibleSet Ball(const Eigen::VectorXd& c, double r) {
  return *FeasibleSet::L2Ball(c, r);
}

TEST(QpProjectTest, SingleBallClosedForm) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 6;
    const Eigen::VectorXd c = RandomGaussian(rng, d, 0.5);
    const std::vector<FeasibleSet> sets = {Ball(c, 0.7)};
    const Eigen::VectorXd p = RandomGaussian(rng, d, 3.0);
    ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q, QpProject(sets, p));
    const double dist = (p - c).norm();
    const Eigen::VectorXd want = dist <= 0.7 ? p : c + 0.7 * (p - c) / dist;
    EXPECT_LE((q - want).norm(), 1e-10);
  }
}

TEST(QpProjectTest, BoxClosedForm) {
  std::mt19937_64 rng(52);
  const Eigen::VectorXd lo = Vec({-1, 0, 0.5});
  const Eigen::VectorXd hi = Vec({1, 0.2, 2});
  const std::vector<FeasibleSet> sets = {*FeasibleSet::Box(lo, hi)};
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd p = RandomGaussian(rng, 3, 2.0);
    ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q, QpProject(sets, p));
    EXPECT_LE((q - p.cwiseMax(lo).cwiseMin(hi)).norm(), 1e-10);
  }
}

TEST(QpProjectTest, L1BallExample) {
  const std::vector<FeasibleSet> sets = {*FeasibleSet::L1Ball(2, 1.0)};
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q, QpProject(sets, Vec({0.6, 0.6})));
  EXPECT_LE((q - Vec({0.5, 0.5})).norm(), 1e-10);
  ASSERT_OK_AND_ASSIGN(q, QpProject(sets, Vec({3, 0.5})));
  EXPECT_LE((q - Vec({1, 0})).norm(), 1e-10);
}

TEST(QpProjectTest, InsidePointIsReturned) {
  const std::vector<FeasibleSet> sets = {
      Ball(Vec({0, 0, 0}), 1.0), *FeasibleSet::L1Ball(3, 1.0)};
  const Eigen::VectorXd p = Vec({0.1, -0.2, 0.3});
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q, QpProject(sets, p));
  EXPECT_LE((q - p).norm(), 1e-10);
}

TEST(QpProjectTest, TwoBallsMatchTightDykstra) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> radius(0.3, 1.5);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 5;
    const Eigen::VectorXd c1 = RandomGaussian(rng, d, 0.3);
    const double r1 = radius(rng);
    // Second center within r1 of the first so the balls overlap.
    const Eigen::VectorXd c2 = c1 + RandomInBall(rng, d, r1);
    const double r2 = radius(rng);
    const std::vector<FeasibleSet> sets = {Ball(c1, r1), Ball(c2, r2)};
    const Eigen::VectorXd p = c1 + RandomGaussian(rng, d, 2.0);
    ASSERT_OK_AND_ASSIGN(QpReport report, QpProjectWithReport(sets, p));
    EXPECT_LE(report.kkt_residual, 1e-8);
    EXPECT_LE((report.point - c1).norm(), r1 + 1e-9);
    EXPECT_LE((report.point - c2).norm(), r2 + 1e-9);
    DykstraOptions tight;
    tight.tol = 1e-13;
    tight.max_iter = 200000;
    ASSERT_OK_AND_ASSIGN(FeasibleSet both, FeasibleSet::Intersection(sets));
    absl::StatusOr<Eigen::VectorXd> dykstra = Project(both, p, tight);
    if (!dykstra.ok()) continue;
    ++checked;
    EXPECT_LE((*dykstra - report.point).norm(), 1e-7) << "trial " << trial;
  }
  EXPECT_GT(checked, 150);
}

TEST(QpProjectTest, Errors) {
  EXPECT_FALSE(QpProject({}, Vec({1, 2})).ok());
  const std::vector<FeasibleSet> sets = {Ball(Vec({0, 0}), 1.0)};
  EXPECT_FALSE(QpProject(sets, Vec({1, 2, 3})).ok());
}

TEST(ProjectSimpleTest, AgreesWithClosedForms) {
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd p,
                       ProjectSimple(Ball(Vec({0, 0}), 1.0), Vec({3, 4})));
  EXPECT_LE((p - Vec({0.6, 0.8})).norm(), 1e-10);
}

LossConstants Constants(double l, double beta, double sc = 0.0) {
  LossConstants c;
  c.lipschitz = l;
  c.smoothness = beta;
  c.strong_convexity = sc;
  return c;
}

LabeledDataset RandomRows(std::mt19937_64& rng, int64_t n, int d,
                          const Eigen::VectorXd& labels) {
  FeatureMatrix x(n, d);
  for (int64_t i = 0; i < n; ++i) x.row(i) = RandomInBall(rng, d, 1.0);
  return *LabeledDataset::Create(x, labels);
}

TEST(ErmExactTest, RecoversNoiselessLinearModel) {
  std::mt19937_64 rng(54);
  const int d = 3;
  const Eigen::VectorXd w_star = Vec({0.2, -0.3, 0.1});
  FeatureMatrix x(50, d);
  for (int i = 0; i < 50; ++i) x.row(i) = RandomInBall(rng, d, 1.0);
  ASSERT_OK_AND_ASSIGN(LabeledDataset data,
                       LabeledDataset::Create(x, x * w_star));
  ASSERT_OK_AND_ASSIGN(LossModel model,
                       LossModel::SquaredLinear(Constants(4, 2)));
  ASSERT_OK_AND_ASSIGN(
      ErmReport report,
      ErmExactWithReport(model, data, *FeasibleSet::L1Ball(d, 1.0)));
  EXPECT_LE((report.minimizer - w_star).norm(), 1e-6);
  EXPECT_LE(report.value, 1e-12);
  EXPECT_TRUE(report.monotone);
}

TEST(ErmExactTest, LogisticResidualIsSmall) {
  std::mt19937_64 rng(55);
  const int d = 4;
  Eigen::VectorXd y(80);
  for (int i = 0; i < 80; ++i) y[i] = i % 3 ? 1.0 : -1.0;
  const LabeledDataset data = RandomRows(rng, 80, d, y);
  ASSERT_OK_AND_ASSIGN(LossModel model, LossModel::LogisticL2Reg(
                                            0.01, Constants(1.01, 0.26, 0.01)));
  const FeasibleSet set = Ball(Eigen::VectorXd::Zero(d), 0.5);
  ASSERT_OK_AND_ASSIGN(ErmReport report, ErmExactWithReport(model, data, set));
  EXPECT_LE(report.residual, 1e-8);
  EXPECT_TRUE(Membership(set, report.minimizer, 1e-12));
  // No feasible perturbation improves the value.
  for (int k = 0; k < 50; ++k) {
    ASSERT_OK_AND_ASSIGN(
        Eigen::VectorXd w,
        Project(set, report.minimizer + RandomGaussian(rng, d, 1e-3)));
    ASSERT_OK_AND_ASSIGN(double v, EmpiricalRisk(model, w, data));
    EXPECT_GE(v, report.value - 1e-12);
  }
}

TEST(ErmExactTest, TncMatchesClosedForm) {
  std::mt19937_64 rng(56);
  for (double theta : {1.5, 2.0, 2.5, 3.0}) {
    const int d = 3;
    const LabeledDataset data =
        RandomRows(rng, 40, d, Eigen::VectorXd::Zero(40));
    LossConstants c = Constants(2.0, 2.0);
    if (theta < 2.0) c.smoothness.reset();
    ASSERT_OK_AND_ASSIGN(LossModel model,
                         LossModel::TncHardInstance(theta, c));
    const Eigen::VectorXd mean = data.features().colwise().mean().transpose();
    ASSERT_OK_AND_ASSIGN(Eigen::VectorXd want, TncMinimizer(mean, theta));
    ASSERT_OK_AND_ASSIGN(
        Eigen::VectorXd got,
        ErmExact(model, data, Ball(Eigen::VectorXd::Zero(d), 1.0)));
    EXPECT_LE((got - want).norm(), 1e-6) << "theta " << theta;
  }
}

TEST(ErmExactTest, Deterministic) {
  std::mt19937_64 rng(57);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) y[i] = i % 2 ? 1.0 : -1.0;
  const LabeledDataset data = RandomRows(rng, 30, 3, y);
  ASSERT_OK_AND_ASSIGN(LossModel model,
                       LossModel::LogisticL2Reg(0.0, Constants(1, 0.25)));
  const FeasibleSet set = *FeasibleSet::L1Ball(3, 1.0);
  ASSERT_OK_AND_ASSIGN(ErmReport a, ErmExactWithReport(model, data, set));
  ASSERT_OK_AND_ASSIGN(ErmReport b, ErmExactWithReport(model, data, set));
  EXPECT_EQ(a.minimizer, b.minimizer);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_TRUE(a.monotone);
}

TEST(TncMinimizerTest, Examples) {
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd w, TncMinimizer(Vec({0.3, 0.4}), 2.0));
  EXPECT_LE((w - Vec({0.3, 0.4})).norm(), 1e-15);
  // |w|^(theta - 1) = |mean| with theta = 3.
  ASSERT_OK_AND_ASSIGN(w, TncMinimizer(Vec({0.25, 0.0}), 3.0));
  EXPECT_LE((w - Vec({0.5, 0.0})).norm(), 1e-15);
  ASSERT_OK_AND_ASSIGN(w, TncMinimizer(Vec({0.0, 0.0}), 1.5));
  EXPECT_EQ(w.norm(), 0.0);
  EXPECT_FALSE(TncMinimizer(Vec({0.3}), 1.0).ok());
  EXPECT_FALSE(TncMinimizer(Vec({0.8, 0.8}), 2.0).ok());
}

TEST(TncMinimizerTest, ZeroesTheEmpiricalGradient) {
  std::mt19937_64 rng(58);
  for (double theta : {1.5, 2.0, 3.5}) {
    const LabeledDataset data =
        RandomRows(rng, 25, 4, Eigen::VectorXd::Zero(25));
    LossConstants c;
    c.lipschitz = 2.0;
    ASSERT_OK_AND_ASSIGN(LossModel model,
                         LossModel::TncHardInstance(theta, c));
    const Eigen::VectorXd mean = data.features().colwise().mean().transpose();
    ASSERT_OK_AND_ASSIGN(Eigen::VectorXd w, TncMinimizer(mean, theta));
    ASSERT_OK_AND_ASSIGN(Eigen::VectorXd g,
                         EmpiricalGradient(model, w, data, 0, 25));
    EXPECT_LE(g.norm(), 1e-12) << "theta " << theta;
  }
}

TEST(TncMinimizerTest, ThetaThreeStationarity) {
  std::mt19937_64 rng(59);
  const int d = 4;
  const Eigen::VectorXd z = 0.25 * RandomInBall(rng, d, 1.0).normalized();
  // Mirrored pairs around z keep the mean exactly z up to rounding.
  FeatureMatrix x(40, d);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd u = RandomInBall(rng, d, 0.5);
    x.row(2 * i) = (z + u).transpose();
    x.row(2 * i + 1) = (z - u).transpose();
  }
  ASSERT_OK_AND_ASSIGN(LabeledDataset data,
                       LabeledDataset::Create(x, Eigen::VectorXd::Zero(40)));
  const Eigen::VectorXd mean = data.features().colwise().mean().transpose();
  ASSERT_NEAR(mean.norm(), 0.25, 1e-15);
  LossConstants c;
  c.lipschitz = 2.0;
  ASSERT_OK_AND_ASSIGN(LossModel model, LossModel::TncHardInstance(3.0, c));
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd w, TncMinimizer(mean, 3.0));
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd g,
                       EmpiricalGradient(model, w, data, 0, 40));
  EXPECT_LE(g.norm(), 1e-10);
}

TEST(FiniteDiffGradientTest, QuadraticIsExact) {
  LossConstants c;
  c.lipschitz = 4.0;
  const LossModel model = *LossModel::SquaredLinear(c);
  const Eigen::VectorXd x = Vec({0.5, -0.25});
  const Eigen::VectorXd w = Vec({0.1, 0.2});
  const Eigen::VectorXd g =
      FiniteDiffGradient(model, w, Sample{x, 0.3}, 1e-4);
  EXPECT_LE((g - 2.0 * (w.dot(x) - 0.3) * x).norm(), 1e-10);
}

}  // namespace
}  // namespace dpsco::oracle
