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

#ifndef DPSCO_CORE_PRIVACY_BUDGET_H_
#define DPSCO_CORE_PRIVACY_BUDGET_H_

#include <string>

#include "absl/status/statusor.h"

namespace dpsco {

enum class PrivacyMode { kPure, kApproximate };

// (epsilon, delta) with the mode implied by delta. Approximate budgets must
// satisfy epsilon <= 2 ln(1/delta), the validity range of the one-pass
// Gaussian calibration used by every driver.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Pure(double epsilon);
  static absl::StatusOr<PrivacyBudget> Approximate(double epsilon,
                                                   double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  PrivacyMode mode() const { return mode_; }
  bool is_pure() const { return mode_ == PrivacyMode::kPure; }

  // ln(1/delta); 0 for pure budgets.
  double LogInverseDelta() const;

  std::string ToString() const;

 private:
  PrivacyBudget(double epsilon, double delta, PrivacyMode mode)
      : epsilon_(epsilon), delta_(delta), mode_(mode) {}

  double epsilon_;
  double delta_;
  PrivacyMode mode_;
};

}  // namespace dpsco

#endif  // DPSCO_CORE_PRIVACY_BUDGET_H_
