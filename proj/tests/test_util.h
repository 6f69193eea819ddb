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

#ifndef DPSCO_TESTS_TEST_UTIL_H_
#define DPSCO_TESTS_TEST_UTIL_H_

#include <random>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gtest/gtest.h"

#define DPSCO_CONCAT_INNER(a, b) a##b
#define DPSCO_CONCAT(a, b) DPSCO_CONCAT_INNER(a, b)

#define ASSERT_OK(expr) \
  ASSERT_PRED_FORMAT1(::dpsco::testing::IsOkFormat, (expr))

#define EXPECT_OK(expr) \
  EXPECT_PRED_FORMAT1(::dpsco::testing::IsOkFormat, (expr))

#define ASSERT_OK_AND_ASSIGN(lhs, rexpr) \
  ASSERT_OK_AND_ASSIGN_IMPL(DPSCO_CONCAT(_statusor_, __LINE__), lhs, rexpr)

#define ASSERT_OK_AND_ASSIGN_IMPL(tmp, lhs, rexpr)        \
  auto tmp = (rexpr);                                     \
  ASSERT_TRUE(tmp.ok()) << tmp.status().ToString();       \
  lhs = std::move(tmp).value()

namespace dpsco::testing {

inline ::testing::AssertionResult IsOkFormat(const char* text,
                                             const absl::Status& status) {
  if (status.ok()) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure()
         << text << " is not OK: " << status.ToString();
}


inline Eigen::VectorXd RandomGaussian(std::mt19937_64& rng, int d,
                                      double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Eigen::VectorXd v(d);
  for (int j = 0; j < d; ++j) v[j] = g(rng);
  return v;
}

// Uniform direction times a radius drawn uniformly from [0, max_norm].
inline Eigen::VectorXd RandomInBall(std::mt19937_64& rng, int d,
                                    double max_norm) {
  Eigen::VectorXd v = RandomGaussian(rng, d);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return v.normalized() * (max_norm * u(rng));
}

inline Eigen::VectorXd Vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace dpsco::testing

#endif  // DPSCO_TESTS_TEST_UTIL_H_
