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

#ifndef DPSCO_ENGINE_PARTITION_H_
#define DPSCO_ENGINE_PARTITION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace dpsco {

// A contiguous row range [begin, end) of one dataset.
struct Segment {
  int64_t begin = 0;
  int64_t end = 0;
  int dataset_id = 0;

  int64_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
};

enum class LeftoverPolicy { kDrop, kAppendLast };

struct PartitionResult {
  std::vector<Segment> segments;
  // Rows not assigned to any segment; empty under kAppendLast.
  Segment unused;
};

// Splits `range` into consecutive disjoint segments of the given sizes, in
// order. Fails if any size is < 1 or the sizes exceed the range.
absl::StatusOr<PartitionResult> Partition(const Segment& range,
                                          std::span<const int64_t> sizes,
                                          LeftoverPolicy policy);

// Same over [0, n).
absl::StatusOr<PartitionResult> Partition(int64_t n,
                                          std::span<const int64_t> sizes,
                                          LeftoverPolicy policy);

}  // namespace dpsco

#endif  // DPSCO_ENGINE_PARTITION_H_
