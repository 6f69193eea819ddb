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

#ifndef DPSCO_SRC_ALGORITHMS_RUN_CONTEXT_H_
#define DPSCO_SRC_ALGORITHMS_RUN_CONTEXT_H_

#include <cstdint>
#include <string>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "dpsco/algorithms/drivers.h"
#include "dpsco/algorithms/run_record.h"
#include "dpsco/engine/partition.h"
#include "dpsco/engine/sgd_pass.h"

namespace dpsco::internal {

// Mutable state of one driver execution: the RNG and the record under
// construction. Nested drivers share one context.
class RunContext {
 public:
  RunContext(const LabeledDataset& data, const PrivacyBudget& budget,
             const DriverOptions& options, uint64_t seed,
             std::string algorithm, int dimension);

  const LabeledDataset& data() const { return data_; }
  const PrivacyBudget& budget() const { return budget_; }
  const DriverOptions& options() const { return options_; }
  int dimension() const { return record_.dimension; }
  RunRecord& record() { return record_; }

  absl::StatusOr<Eigen::VectorXd> Project(const FeasibleSet& set,
                                          const Eigen::VectorXd& w);

  absl::StatusOr<SgdPassResult> Pass(const LossModel& model,
                                     const Segment& segment,
                                     const Eigen::VectorXd& w_start,
                                     double stepsize, const FeasibleSet& set);

  // Adds calibrated noise to `point` and ledgers the release.
  absl::StatusOr<Eigen::VectorXd> Release(const std::string& stage,
                                          const Segment& segment,
                                          double sensitivity, double stepsize,
                                          const Eigen::VectorXd& point);

  void MarkUnused(const Segment& segment);

  double ClampStep(const std::string& stage, double eta,
                   const LossModel& model);

  void Warn(std::string message);

  RunRecord Finish(Eigen::VectorXd final_point);

 private:
  const LabeledDataset& data_;
  const PrivacyBudget budget_;
  const DriverOptions options_;
  Rng rng_;
  RunRecord record_;
  int next_segment_id_ = 0;
};

absl::Status CheckInputs(const LabeledDataset& data, const LossModel& model,
                         const FeasibleSet& set, const Eigen::VectorXd& w0);

// Nested building blocks. Each consumes `range` of the context's data.
absl::StatusOr<Eigen::VectorXd> RunPhasedSgd(RunContext& ctx,
                                             const std::string& label,
                                             const LossModel& model,
                                             const FeasibleSet& set,
                                             const Segment& range,
                                             const Eigen::VectorXd& w_start,
                                             double eta);

absl::StatusOr<Eigen::VectorXd> RunPhasedSgdSc(
    RunContext& ctx, const std::string& label, const LossModel& model,
    const FeasibleSet& set, const Segment& range,
    const Eigen::VectorXd& w_start, const Eigen::VectorXd& center,
    double gamma, double distance);

absl::StatusOr<Eigen::VectorXd> RunIteratedPhasedSgd(
    RunContext& ctx, const std::string& label, const LossModel& model,
    const FeasibleSet& set, const Segment& range,
    const Eigen::VectorXd& w_start, double theta_bar, double distance);

absl::StatusOr<Eigen::VectorXd> RunEpochDpSgd(
    RunContext& ctx, const std::string& label, const LossModel& model,
    const FeasibleSet& set, const Segment& range,
    const Eigen::VectorXd& w_start, double eta1, int64_t n1,
    double sensitivity_factor);

}  // namespace dpsco::internal

#endif  // DPSCO_SRC_ALGORITHMS_RUN_CONTEXT_H_
