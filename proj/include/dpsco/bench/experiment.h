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

#ifndef DPSCO_BENCH_EXPERIMENT_H_
#define DPSCO_BENCH_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpsco/algorithms/run_record.h"
#include "dpsco/bench/config.h"
#include "dpsco/core/dataset.h"

namespace dpsco::bench {

struct ExperimentData {
  LabeledDataset train;
  LabeledDataset test;
  std::vector<std::string> notes;
};

absl::StatusOr<ExperimentData> LoadExperimentData(
    const ExperimentConfig& config);

// delta = n^(-1.1).
double DeltaForN(int64_t n);
// epsilon = 4 sqrt(ln(1 / delta)).
double EpsilonForDelta(double delta);

struct CellRule {
  int64_t n = 0;
  double epsilon = 0.0;
  double delta = 0.0;
};
CellRule RuleFor(const ExperimentConfig& config, double sweep_value);

struct ResultRow {
  double sweep_value = 0.0;
  std::string algorithm;
  double mean_test_error = 0.0;
  double std_test_error = 0.0;
  int n_seeds = 0;
  double wall_time_s = 0.0;
  std::vector<double> per_seed;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  int n_seeds = 0;
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;

  bool ok() const { return failures.empty(); }
};

struct CellRecord {
  size_t row = 0;
  int seed_index = 0;
  RunRecord record;
};

// Runs every (sweep value, algorithm, seed) cell. Failed cells contribute
// NaN and a message in `failures`. When `records` is non-null it receives
// the run record of every successful cell in cell order.
absl::StatusOr<ResultTable> RunExperiment(
    const ExperimentConfig& config, const ExperimentData& data,
    std::vector<CellRecord>* records = nullptr);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_EXPERIMENT_H_
