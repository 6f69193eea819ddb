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

#ifndef DPSCO_BENCH_CONFIG_H_
#define DPSCO_BENCH_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsco/bench/problem.h"

namespace dpsco::bench {

enum class SweepKind { kOverN, kOverEpsilon };

struct ExperimentConfig {
  ProblemConfig problem;
  std::vector<AlgorithmConfig> algorithms;

  SweepKind sweep = SweepKind::kOverN;
  std::vector<double> sweep_values;
  // Training size for over_epsilon sweeps.
  int64_t fixed_n = 10000;

  int seeds = 20;
  uint64_t master_seed = 1;

  // "synthetic", "a9a", "ijcnn1" or "libsvm".
  std::string dataset = "synthetic";
  std::string train_path;
  std::string test_path;
  // Synthetic pool size; 0 means the largest n the sweep needs.
  int64_t pool_size = 0;
  int64_t test_size = 10000;
  double label_noise = 0.1;

  bool pure_dp = false;

  std::string output_path;
  // "csv" or "json".
  std::string format = "csv";
  // When false the wall-time column is written as 0 so output is
  // byte-reproducible.
  bool record_wall_time = true;
  // Worker cap; 0 means hardware concurrency.
  int threads = 0;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

std::string SweepKindName(SweepKind kind);

absl::Status ValidateConfig(const ExperimentConfig& config);

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view json);

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

std::string ExperimentConfigToJson(const ExperimentConfig& config,
                                   int indent = 2);

// DPSCO_SEED replaces the master seed; DPSCO_THREADS caps the worker pool.
absl::Status ApplyEnvironment(ExperimentConfig& config);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_CONFIG_H_
