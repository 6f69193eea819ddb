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

#ifndef DPSCO_BENCH_SYNTHETIC_H_
#define DPSCO_BENCH_SYNTHETIC_H_

#include <cstdint>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/core/dataset.h"

namespace dpsco::bench {

// Features uniform on the unit sphere; y = <w_star, x> plus noise uniform on
// [-label_noise, label_noise].
absl::StatusOr<LabeledDataset> SyntheticLinear(int64_t n,
                                               const Eigen::VectorXd& w_star,
                                               double label_noise,
                                               uint64_t seed);

// As SyntheticLinear, with labels replaced by their sign (+1 at zero).
absl::StatusOr<LabeledDataset> SyntheticClassification(
    int64_t n, const Eigen::VectorXd& w_star, double label_noise,
    uint64_t seed);

// Features uniform on the corners of the hypercube with |x_i| = 1 / sqrt(d);
// labels are zero.
absl::StatusOr<LabeledDataset> SyntheticTnc(int64_t n, int dimension,
                                            uint64_t seed);

// Uniformly random direction scaled to the given l1 norm.
Eigen::VectorXd RandomL1Vector(int dimension, double l1_norm, uint64_t seed);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_SYNTHETIC_H_
