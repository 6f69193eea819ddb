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

#ifndef DPSCO_BENCH_LIBSVM_H_
#define DPSCO_BENCH_LIBSVM_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpsco/core/dataset.h"

namespace dpsco::bench {

struct LibsvmOptions {
  // Pad to at least this many columns.
  int min_dimension = 0;
  // Scale all rows by one common factor so that every row has norm <= 1.
  bool normalize = true;
};

absl::StatusOr<LabeledDataset> ParseLibsvmText(std::string_view text,
                                               const LibsvmOptions& options = {});

absl::StatusOr<LabeledDataset> ParseLibsvm(const std::string& path,
                                           const LibsvmOptions& options = {});

// Pads both sets to a common dimension and scales them by one shared factor
// so that every row of either has norm <= 1.
struct TrainTest {
  LabeledDataset train;
  LabeledDataset test;
  std::vector<std::string> warnings;
};
TrainTest AlignAndNormalize(const LabeledDataset& train,
                            const LabeledDataset& test);

inline constexpr int64_t kIjcnn1MovedRows = 80000;
inline constexpr int64_t kIjcnn1TrainTarget = 115000;
inline constexpr int64_t kIjcnn1TestTarget = 11701;

// Moves a seeded uniform sample of 80000 test rows into the training set.
// Expects raw rows; normalize the result with AlignAndNormalize.
absl::StatusOr<TrainTest> PrepareIjcnn1(const LabeledDataset& train,
                                        const LabeledDataset& test,
                                        uint64_t seed);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_LIBSVM_H_
