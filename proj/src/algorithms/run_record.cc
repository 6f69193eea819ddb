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

#include "dpsco/algorithms/run_record.h"

#include <algorithm>
#include <map>

#include "absl/strings/str_cat.h"

namespace dpsco {

absl::Status AuditLedger(const RunRecord& record) {
  std::vector<LedgerEntry> entries = record.sample_ledger;
  std::sort(entries.begin(), entries.end(),
            [](const LedgerEntry& a, const LedgerEntry& b) {
              return a.begin < b.begin;
            });
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].end < entries[i].begin) {
      return absl::InternalError(
          absl::StrCat("Ledger segment ", entries[i].segment_id,
                       " has a negative range."));
    }
    if (i > 0 && entries[i].begin < entries[i - 1].end) {
      return absl::InternalError(absl::StrCat(
          "Ledger segments ", entries[i - 1].segment_id, " [",
          entries[i - 1].begin, ", ", entries[i - 1].end, ") and ",
          entries[i].segment_id, " [", entries[i].begin, ", ", entries[i].end,
          ") overlap."));
    }
  }
  if (record.noise_scales.size() != record.releases.size() ||
      record.released_iterates.size() != record.releases.size()) {
    return absl::InternalError(
        "Release, noise-scale and iterate lists differ in length.");
  }
  std::map<int, int> uses;
  for (const LedgerEntry& e : record.sample_ledger) {
    if (e.release_id != kUnusedRelease) ++uses[e.release_id];
  }
  for (size_t i = 0; i < record.releases.size(); ++i) {
    const Release& r = record.releases[i];
    if (uses[r.id] != 1) {
      return absl::InternalError(absl::StrCat(
          "Release ", r.id, " (", r.stage, ") appears in ", uses[r.id],
          " ledger entries."));
    }
    if (record.noise_scales[i] != r.scale) {
      return absl::InternalError(
          absl::StrCat("Release ", r.id, " has inconsistent noise scales."));
    }
  }
  if (uses.size() > record.releases.size()) {
    return absl::InternalError("Ledger references an unknown release.");
  }
  return absl::OkStatus();
}

absl::Status AuditNoiseScales(const RunRecord& record) {
  if (!record.budget.has_value()) {
    return absl::InternalError("Run record has no privacy budget.");
  }
  for (const Release& r : record.releases) {
    absl::StatusOr<NoiseSpec> expected = ReleaseNoise(
        r.sensitivity, *record.budget, record.dimension, record.calibration);
    if (!expected.ok()) return expected.status();
    if (expected->family() != r.family) {
      return absl::InternalError(absl::StrCat(
          "Release ", r.id, " used ", NoiseFamilyName(r.family), " noise under a ",
          record.budget->ToString(), " budget."));
    }
    if (expected->scale() != r.scale) {
      return absl::InternalError(
          absl::StrCat("Release ", r.id, " (", r.stage, ") recorded scale ",
                       r.scale, " but the formula gives ", expected->scale(),
                       "."));
    }
  }
  return absl::OkStatus();
}

}  // namespace dpsco
