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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>

#include "dpsco/verify/criteria.h"
#include "gtest/gtest.h"

namespace dpsco::verify {
namespace {

TEST(CriteriaTest, NoiseCalibrationPasses) {
  const CriterionResult r = RunCriterion(1, {});
  EXPECT_EQ(r.outcome, Outcome::kPass) << FormatResult(r);
  EXPECT_EQ(r.id, 1);
}

TEST(CriteriaTest, StabilityBoundPasses) {
  const CriterionResult r = RunCriterion(3, {});
  EXPECT_EQ(r.outcome, Outcome::kPass) << FormatResult(r);
}

TEST(CriteriaTest, ScheduleTablesPass) {
  const CriterionResult r = RunCriterion(4, {});
  EXPECT_EQ(r.outcome, Outcome::kPass) << FormatResult(r);
}

TEST(CriteriaTest, TncStationarityPasses) {
  const CriterionResult r = RunCriterion(6, {});
  EXPECT_EQ(r.outcome, Outcome::kPass) << FormatResult(r);
}

TEST(CriteriaTest, UnknownIdFails) {
  EXPECT_EQ(RunCriterion(0, {}).outcome, Outcome::kFail);
  EXPECT_EQ(RunCriterion(kCriterionCount + 1, {}).outcome, Outcome::kFail);
}

TEST(CriteriaTest, A9aSkipsWithoutFiles) {
  const CriterionResult r = RunCriterion(7, {});
  EXPECT_EQ(r.outcome, Outcome::kSkip);
  EXPECT_NE(FormatResult(r).find("[SKIP] 7"), std::string::npos);
}

// Writes an a9a-shaped file: binary features over 123 columns, labels +-1.
void WriteA9aLike(const std::string& path, int rows, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> column(1, 123);
  std::ofstream out(path);
  for (int i = 0; i < rows; ++i) {
    std::set<int> on;
    while (on.size() < 14) on.insert(column(rng));
    int score = 0;
    for (int c : on) score += c % 3 == 0 ? 1 : -1;
    out << (score >= 0 ? "+1" : "-1");
    for (int c : on) out << ' ' << c << ":1";
    out << '\n';
  }
}

TEST(CriteriaTest, A9aRunsOnSuppliedFiles) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const std::string train = (dir / "dpsco_a9a_like.train").string();
  const std::string test = (dir / "dpsco_a9a_like.test").string();
  WriteA9aLike(train, 10500, 1);
  WriteA9aLike(test, 2000, 2);
  VerifyOptions options;
  options.a9a_train = train;
  options.a9a_test = test;
  const CriterionResult r = RunCriterion(7, options);
  EXPECT_NE(r.outcome, Outcome::kSkip) << FormatResult(r);
  EXPECT_NE(r.detail.find("iterated"), std::string::npos) << FormatResult(r);
  std::filesystem::remove(train);
  std::filesystem::remove(test);
}

TEST(CriteriaTest, EnvironmentSuppliesPaths) {
  setenv("DPSCO_A9A_TRAIN", "/a", 1);
  setenv("DPSCO_A9A_TEST", "/b", 1);
  VerifyOptions o = OptionsFromEnvironment();
  ASSERT_TRUE(o.a9a_train.has_value());
  EXPECT_EQ(*o.a9a_train, "/a");
  EXPECT_EQ(*o.a9a_test, "/b");
  unsetenv("DPSCO_A9A_TRAIN");
  unsetenv("DPSCO_A9A_TEST");
  o = OptionsFromEnvironment();
  EXPECT_FALSE(o.a9a_train.has_value());
}

TEST(FormatTest, Layout) {
  CriterionResult r;
  r.id = 3;
  r.title = "stability";
  r.outcome = Outcome::kPass;
  r.detail = "ok";
  r.seconds = 1.234;
  r.time_limit_s = 60;
  EXPECT_EQ(FormatResult(r), "[PASS] 3 stability (1.23 s / 60 s): ok");
  EXPECT_EQ(OutcomeName(Outcome::kWarn), "WARN");
}

}  // namespace
}  // namespace dpsco::verify
