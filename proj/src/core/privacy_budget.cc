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

#include "dpsco/core/privacy_budget.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpsco {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Pure(double epsilon) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be positive and finite, got ", epsilon, "."));
  }
  return PrivacyBudget(epsilon, 0.0, PrivacyMode::kPure);
}

absl::StatusOr<PrivacyBudget> PrivacyBudget::Approximate(double epsilon,
                                                         double delta) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be positive and finite, got ", epsilon, "."));
  }
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Approximate budgets need delta in (0, 1), got ", delta, "."));
  }
  const double limit = 2.0 * std::log(1.0 / delta);
  if (epsilon > limit) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Epsilon ", epsilon, " exceeds 2 ln(1/delta) = ", limit,
        "; the Gaussian calibration is not valid there."));
  }
  return PrivacyBudget(epsilon, delta, PrivacyMode::kApproximate);
}

double PrivacyBudget::LogInverseDelta() const {
  return is_pure() ? 0.0 : std::log(1.0 / delta_);
}

std::string PrivacyBudget::ToString() const {
  if (is_pure()) return absl::StrCat("pure(epsilon=", epsilon_, ")");
  return absl::StrCat("approximate(epsilon=", epsilon_, ", delta=", delta_,
                      ")");
}

}  // namespace dpsco
