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

#ifndef DPSCO_VERIFY_CRITERIA_H_
#define DPSCO_VERIFY_CRITERIA_H_

#include <cstdint>
#include <optional>
#include <string>

namespace dpsco::verify {

enum class Outcome { kPass, kWarn, kFail, kSkip };

std::string OutcomeName(Outcome outcome);

struct CriterionResult {
  int id = 0;
  std::string title;
  Outcome outcome = Outcome::kFail;
  std::string detail;
  double seconds = 0.0;
  double time_limit_s = 0.0;
};

struct VerifyOptions {
  // a9a train/test files; criterion 7 is skipped without them.
  std::optional<std::string> a9a_train;
  std::optional<std::string> a9a_test;
  uint64_t seed = 20260101;
};

// Reads DPSCO_A9A_TRAIN and DPSCO_A9A_TEST.
VerifyOptions OptionsFromEnvironment();

inline constexpr int kCriterionCount = 8;

// Runs criterion `id` (1..8). A result over its time limit is a failure.
CriterionResult RunCriterion(int id, const VerifyOptions& options);

// One line: "[PASS] 3 title (1.23 s / 60 s): detail".
std::string FormatResult(const CriterionResult& result);

}  // namespace dpsco::verify

#endif  // DPSCO_VERIFY_CRITERIA_H_
