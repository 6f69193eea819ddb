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

#include "dpsco/geometry/feasible_set.h"
#include "dpsco/oracle/qp_project.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpsco {
namespace {

using ::dpsco::testing::RandomGaussian;
using ::dpsco::testing::RandomInBall;
using ::dpsco::testing::Vec;

FeasibleSet Ball(int d, double r) {
  return *FeasibleSet::L2Ball(Eigen::VectorXd::Zero(d), r);
}

FeasibleSet Cube(int d, double half) {
  return *FeasibleSet::Box(Eigen::VectorXd::Constant(d, -half),
                           Eigen::VectorXd::Constant(d, half));
}

std::vector<FeasibleSet> SampleSets(int d) {
  std::vector<FeasibleSet> sets;
  sets.push_back(Ball(d, 1.0));
  sets.push_back(*FeasibleSet::L2Ball(Eigen::VectorXd::Constant(d, 0.2), 0.5));
  sets.push_back(*FeasibleSet::L1Ball(d, 1.0));
  sets.push_back(Cube(d, 0.4));
  sets.push_back(*FeasibleSet::Intersection({Ball(d, 1.0), Cube(d, 0.5)}));
  sets.push_back(
      *FeasibleSet::Intersection({*FeasibleSet::L1Ball(d, 1.0), Ball(d, 0.8)}));
  sets.push_back(*FeasibleSet::Intersection(
      {Ball(d, 1.0),
       *FeasibleSet::L2Ball(Eigen::VectorXd::Constant(d, 0.25), 1.0)}));
  return sets;
}

bool IsIntersection(const FeasibleSet& set) {
  return set.kind() == FeasibleSet::Kind::kIntersection;
}

TEST(ProjectTest, L2BallExample) {
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd p, Project(Ball(2, 1.0), Vec({3, 4})));
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
}

TEST(ProjectTest, L1BallExampleMatchesQpOracle) {
  const FeasibleSet set = *FeasibleSet::L1Ball(2, 1.0);
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd p, Project(set, Vec({0.6, 0.6})));
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  const std::vector<FeasibleSet> sets = {set};
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q,
                       oracle::QpProject(sets, Vec({0.6, 0.6})));
  EXPECT_LE((p - q).norm(), 1e-8);
}

TEST(ProjectTest, L1BallSoftThresholds) {
  // Only the large coordinate survives.
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd p,
                       Project(*FeasibleSet::L1Ball(3, 1.0), Vec({3, 0.5, -1})));
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_EQ(p[2], 0.0);
}

TEST(ProjectTest, BoxClamps) {
  ASSERT_OK_AND_ASSIGN(FeasibleSet box, FeasibleSet::Box(Vec({0, -1}),
                                                          Vec({1, 1})));
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd p, Project(box, Vec({-2, 0.5})));
  EXPECT_EQ(p, Vec({0, 0.5}));
}

TEST(ProjectTest, InteriorPointsAreFixed) {
  std::mt19937_64 rng(21);
  for (const FeasibleSet& set : SampleSets(4)) {
    const Eigen::VectorXd p = RandomInBall(rng, 4, 0.05);
    ASSERT_TRUE(Membership(set, p, 0.0)) << set.DebugString();
    ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q, Project(set, p));
    EXPECT_EQ(p, q) << set.DebugString();
  }
}

TEST(ProjectTest, Idempotent) {
  std::mt19937_64 rng(22);
  for (int d : {1, 3, 7}) {
    for (const FeasibleSet& set : SampleSets(d)) {
      for (int trial = 0; trial < 50; ++trial) {
        ASSERT_OK_AND_ASSIGN(Eigen::VectorXd p,
                             Project(set, RandomGaussian(rng, d, 2.0)));
        ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q, Project(set, p));
        EXPECT_LE((p - q).norm(), IsIntersection(set) ? 1e-7 : 1e-12)
            << set.DebugString();
      }
    }
  }
}

TEST(ProjectTest, Nonexpansive) {
  std::mt19937_64 rng(23);
  for (int d : {2, 5}) {
    for (const FeasibleSet& set : SampleSets(d)) {
      const double slack = IsIntersection(set) ? 1e-7 : 1e-12;
      for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXd a = RandomGaussian(rng, d, 2.0);
        const Eigen::VectorXd b = RandomGaussian(rng, d, 2.0);
        ASSERT_OK_AND_ASSIGN(Eigen::VectorXd pa, Project(set, a));
        ASSERT_OK_AND_ASSIGN(Eigen::VectorXd pb, Project(set, b));
        EXPECT_LE((pa - pb).norm(), (a - b).norm() + slack)
            << set.DebugString();
      }
    }
  }
}

TEST(ProjectTest, VariationalInequality) {
  // <p - P(p), z - P(p)> <= 0 for every z in the set.
  std::mt19937_64 rng(24);
  for (int d : {2, 6}) {
    for (const FeasibleSet& set : SampleSets(d)) {
      const double tol = IsIntersection(set) ? 1e-6 : 1e-8;
      for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXd p = RandomGaussian(rng, d, 2.0);
        ASSERT_OK_AND_ASSIGN(Eigen::VectorXd proj, Project(set, p));
        EXPECT_TRUE(Membership(set, proj, 1e-7)) << set.DebugString();
        for (int k = 0; k < 20; ++k) {
          ASSERT_OK_AND_ASSIGN(Eigen::VectorXd z,
                               Project(set, RandomGaussian(rng, d)));
          EXPECT_LE((p - proj).dot(z - proj), tol) << set.DebugString();
        }
      }
    }
  }
}

TEST(ProjectTest, IntersectionMatchesQpOracle) {
  std::mt19937_64 rng(25);
  for (int d : {2, 4, 8}) {
    for (const FeasibleSet& set : SampleSets(d)) {
      if (!IsIntersection(set)) continue;
      for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd p = RandomGaussian(rng, d, 2.0);
        ASSERT_OK_AND_ASSIGN(Eigen::VectorXd a, Project(set, p));
        ASSERT_OK_AND_ASSIGN(Eigen::VectorXd b,
                             oracle::QpProject(set.members(), p));
        EXPECT_LE((a - b).norm(), 1e-6) << set.DebugString();
      }
    }
  }
}

TEST(ProjectTest, ReportFlagsNonConvergence) {
  const FeasibleSet set =
      *FeasibleSet::Intersection({Ball(3, 1.0), Cube(3, 0.2)});
  DykstraOptions tight;
  tight.max_iter = 1;
  tight.tol = 1e-15;
  ASSERT_OK_AND_ASSIGN(ProjectionReport report,
                       ProjectWithReport(set, Vec({5, -3, 2}), tight));
  EXPECT_GE(report.iterations, 1);
  EXPECT_FALSE(Project(*FeasibleSet::Intersection(
                           {Ball(3, 1.0),
                            *FeasibleSet::L2Ball(Vec({1.5, 0, 0}), 1.0)}),
                       Vec({0.75, 3, 0}), tight)
                   .ok());
}

TEST(ProjectTest, DimensionMismatchIsAnError) {
  EXPECT_FALSE(Project(Ball(3, 1.0), Vec({1, 2})).ok());
}

TEST(MembershipTest, Examples) {
  EXPECT_TRUE(Membership(*FeasibleSet::L1Ball(2, 1.0), Vec({0.5, 0.5}), 1e-9));
  EXPECT_FALSE(Membership(Ball(2, 1.0), Vec({1.1, 0}), 1e-9));
  EXPECT_TRUE(Membership(
      *FeasibleSet::Intersection({Ball(2, 1.0), Cube(2, 0.5)}),
      Vec({0.4, 0.4}), 1e-9));
  EXPECT_TRUE(Membership(Ball(2, 1.0), Vec({0.6, 0.8}), 1e-12));
  EXPECT_FALSE(Membership(Ball(2, 1.0), Vec({0.6, 0.81}), 1e-12));
  EXPECT_TRUE(Membership(Ball(2, 1.0), Vec({0.6, 0.81}), 0.01));
  EXPECT_TRUE(Membership(*FeasibleSet::L1Ball(2, 1.0), Vec({0.5, -0.5}), 0));
  EXPECT_FALSE(Membership(*FeasibleSet::L1Ball(2, 1.0), Vec({0.6, -0.5}), 0));
  EXPECT_FALSE(Membership(Ball(2, 1.0), Vec({0.0}), 1.0));
  const FeasibleSet both =
      *FeasibleSet::Intersection({Ball(2, 1.0), Cube(2, 0.5)});
  EXPECT_TRUE(Membership(both, Vec({0.5, 0.5}), 0));
  EXPECT_FALSE(Membership(both, Vec({0.9, 0.0}), 0));
}

TEST(FeasibleSetTest, Diameters) {
  EXPECT_DOUBLE_EQ(Ball(3, 1.5).diameter(), 3.0);
  EXPECT_DOUBLE_EQ(FeasibleSet::L1Ball(3, 0.5)->diameter(), 1.0);
  EXPECT_DOUBLE_EQ(Cube(4, 0.5).diameter(), 2.0);
  const FeasibleSet both =
      *FeasibleSet::Intersection({Ball(4, 1.0), Cube(4, 0.5)});
  EXPECT_DOUBLE_EQ(both.diameter(), 2.0);
}

TEST(FeasibleSetTest, NestedIntersectionsFlatten) {
  const FeasibleSet inner =
      *FeasibleSet::Intersection({Ball(2, 1.0), Cube(2, 0.5)});
  ASSERT_OK_AND_ASSIGN(
      FeasibleSet outer,
      FeasibleSet::Intersection({inner, *FeasibleSet::L1Ball(2, 1.0)}));
  EXPECT_EQ(outer.members().size(), 3u);
  for (const FeasibleSet& m : outer.members()) {
    EXPECT_FALSE(IsIntersection(m));
  }
}

TEST(FeasibleSetTest, RejectsBadArguments) {
  EXPECT_FALSE(FeasibleSet::L2Ball(Vec({0, 0}), 0.0).ok());
  EXPECT_FALSE(FeasibleSet::L2Ball(Vec({0, 0}), -1.0).ok());
  EXPECT_FALSE(FeasibleSet::L2Ball(Eigen::VectorXd(0), 1.0).ok());
  EXPECT_FALSE(FeasibleSet::L1Ball(0, 1.0).ok());
  EXPECT_FALSE(FeasibleSet::L1Ball(2, INFINITY).ok());
  EXPECT_FALSE(FeasibleSet::Box(Vec({1, 0}), Vec({0, 1})).ok());
  EXPECT_FALSE(FeasibleSet::Box(Vec({0}), Vec({0, 1})).ok());
  EXPECT_FALSE(FeasibleSet::Intersection({}).ok());
  EXPECT_FALSE(FeasibleSet::Intersection({Ball(2, 1.0), Ball(3, 1.0)}).ok());
}

}  // namespace
}  // namespace dpsco
