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

#ifndef DPSCO_ENGINE_SGD_PASS_H_
#define DPSCO_ENGINE_SGD_PASS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/core/dataset.h"
#include "dpsco/core/loss.h"
#include "dpsco/engine/partition.h"
#include "dpsco/geometry/feasible_set.h"

namespace dpsco {

struct SgdPassOptions {
  // Rescale any gradient longer than this to this norm.
  std::optional<double> clip_norm;
  DykstraOptions dykstra;
  // Keep all n_i + 1 iterates in the result.
  bool record_trajectory = false;
};

struct SgdPassResult {
  // Mean of the iterates w^1 = w_start, ..., w^{n_i + 1}.
  Eigen::VectorXd averaged;
  Eigen::VectorXd last;
  // Worst Dykstra residual over the pass; 0 for exact projections.
  double max_projection_residual = 0.0;
  // Set when w_start was infeasible and had to be projected first.
  bool start_projected = false;
  std::vector<Eigen::VectorXd> trajectory;
};

// One pass of projected SGD over `segment`, visiting each sample once in
// stored order:
//   w^{t+1} = Proj(w^t - stepsize * grad f(w^t, x_t)).
// Deterministic; noise is the caller's business.
absl::StatusOr<SgdPassResult> SgdPass(const LossModel& model,
                                      const LabeledDataset& data,
                                      const Segment& segment,
                                      const Eigen::VectorXd& w_start,
                                      double stepsize, const FeasibleSet& set,
                                      const SgdPassOptions& options = {});

// l2 sensitivity 2 L^2 / (lambda_sc n_i) of the averaged iterate of a pass
// over n_i samples with a strongly convex loss and stepsize <= 1/beta.
// Fails if the model is not strongly convex.
absl::StatusOr<double> StabilitySensitivity(const LossModel& model,
                                            int64_t segment_size);

}  // namespace dpsco

#endif  // DPSCO_ENGINE_SGD_PASS_H_
