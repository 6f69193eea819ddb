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

#include "dpsco/engine/partition.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpsco {

absl::StatusOr<PartitionResult> Partition(const Segment& range,
                                          std::span<const int64_t> sizes,
                                          LeftoverPolicy policy) {
  if (range.begin < 0 || range.end < range.begin) {
    return absl::InvalidArgumentError("Invalid row range.");
  }
  int64_t total = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Segment ", i + 1, " has size ", sizes[i], "; sizes must be >= 1."));
    }
    total += sizes[i];
  }
  if (total > range.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Segment sizes sum to ", total, " but only ",
                     range.size(), " samples are available."));
  }
  PartitionResult result;
  int64_t cursor = range.begin;
  for (int64_t size : sizes) {
    result.segments.push_back(
        Segment{cursor, cursor + size, range.dataset_id});
    cursor += size;
  }
  if (policy == LeftoverPolicy::kAppendLast && !result.segments.empty()) {
    result.segments.back().end = range.end;
    cursor = range.end;
  }
  result.unused = Segment{cursor, range.end, range.dataset_id};
  return result;
}

absl::StatusOr<PartitionResult> Partition(int64_t n,
                                          std::span<const int64_t> sizes,
                                          LeftoverPolicy policy) {
  return Partition(Segment{0, n, 0}, sizes, policy);
}

}  // namespace dpsco
