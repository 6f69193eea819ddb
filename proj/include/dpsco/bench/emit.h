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

#ifndef DPSCO_BENCH_EMIT_H_
#define DPSCO_BENCH_EMIT_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsco/bench/config.h"
#include "dpsco/bench/experiment.h"

namespace dpsco::bench {

// Header: sweep_value, algorithm, mean_test_error, std_test_error, n_seeds,
// wall_time_s, seed_0 .. seed_{n_seeds - 1}. Numbers use 17 significant
// digits.
std::string FormatCsv(const ResultTable& table);

absl::StatusOr<ResultTable> ParseCsv(std::string_view text);

// The table plus a "config" block echoing the experiment configuration.
std::string FormatJson(const ResultTable& table,
                       const ExperimentConfig& config);

absl::Status WriteFile(const std::string& path, std::string_view contents);

// Writes the table in `format` ("csv" or "json") to `path`.
absl::Status Emit(const ResultTable& table, const ExperimentConfig& config,
                  std::string_view format, const std::string& path);

}  // namespace dpsco::bench

#endif  // DPSCO_BENCH_EMIT_H_
