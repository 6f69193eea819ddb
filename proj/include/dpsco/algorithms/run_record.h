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

#ifndef DPSCO_ALGORITHMS_RUN_RECORD_H_
#define DPSCO_ALGORITHMS_RUN_RECORD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "dpsco/core/privacy_budget.h"
#include "dpsco/mechanisms/noise.h"

namespace dpsco {

// Release id of ledger entries for rows no release touched.
inline constexpr int kUnusedRelease = -1;

struct LedgerEntry {
  int segment_id = 0;
  int64_t begin = 0;
  int64_t end = 0;
  int release_id = kUnusedRelease;
};

// One noisy release of an averaged or solved iterate.
struct Release {
  int id = 0;
  // Slash-separated path of driver stages, e.g. "iterated[2]/phased[3]".
  std::string stage;
  NoiseFamily family = NoiseFamily::kGaussian;
  // Base l2 sensitivity fed to ReleaseNoise.
  double sensitivity = 0.0;
  double scale = 0.0;
  double stepsize = 0.0;
  int64_t segment_size = 0;
};

struct StepClamp {
  std::string stage;
  double requested = 0.0;
  double applied = 0.0;
};

// Everything one seeded driver execution released or decided.
struct RunRecord {
  std::string algorithm;
  uint64_t seed = 0;
  int dimension = 0;
  std::optional<PrivacyBudget> budget;
  NoiseCalibration calibration;
  // Noise was computed and ledgered but not added (test hook).
  bool noise_disabled = false;

  std::vector<Eigen::VectorXd> released_iterates;
  // One per release, parallel to `releases`.
  std::vector<double> noise_scales;
  std::vector<Release> releases;
  std::vector<LedgerEntry> sample_ledger;
  std::vector<StepClamp> clamps;
  std::vector<std::string> warnings;

  // Worst Dykstra residual over every projection of the run.
  double max_projection_residual = 0.0;

  // Phased-ERM: certified suboptimality and its target, per stage.
  std::vector<double> inner_gaps;
  std::vector<double> inner_targets;

  // PSA-II: the stage outputs w_1..w_m, and the point picked from them. The
  // pick uses held-out risk and is for evaluation only; it is not private.
  std::vector<Eigen::VectorXd> trajectory;
  std::optional<Eigen::VectorXd> selected;
  bool selection_is_nonprivate = false;

  Eigen::VectorXd final_point;
};

// Checks that ledger ranges are pairwise disjoint and that every release
// appears in exactly one ledger entry with exactly one noise scale.
absl::Status AuditLedger(const RunRecord& record);

// Recomputes every release's scale from its recorded sensitivity with the
// record's budget, dimension and calibration, and requires bit equality.
absl::Status AuditNoiseScales(const RunRecord& record);

}  // namespace dpsco

#endif  // DPSCO_ALGORITHMS_RUN_RECORD_H_
