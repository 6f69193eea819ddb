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

#include "dpsco/bench/emit.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "json.hpp"

namespace dpsco::bench {
namespace {

std::string Num(double v) { return absl::StrFormat("%.17g", v); }

bool ParseNum(absl::string_view field, double* out) {
  const std::string s(field);
  char* end = nullptr;
  *out = std::strtod(s.c_str(), &end);
  return !s.empty() && end == s.c_str() + s.size();
}

nlohmann::json JsonNum(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string FormatCsv(const ResultTable& table) {
  std::string out =
      "sweep_value,algorithm,mean_test_error,std_test_error,n_seeds,"
      "wall_time_s";
  for (int s = 0; s < table.n_seeds; ++s) absl::StrAppend(&out, ",seed_", s);
  out += "\n";
  for (const ResultRow& row : table.rows) {
    absl::StrAppend(&out, Num(row.sweep_value), ",", row.algorithm, ",",
                    Num(row.mean_test_error), ",", Num(row.std_test_error),
                    ",", row.n_seeds, ",", Num(row.wall_time_s));
    for (double e : row.per_seed) absl::StrAppend(&out, ",", Num(e));
    out += "\n";
  }
  return out;
}

absl::StatusOr<ResultTable> ParseCsv(std::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(
      absl::string_view(text.data(), text.size()), '\n', absl::SkipEmpty());
  if (lines.empty()) return absl::InvalidArgumentError("CSV has no header.");
  const std::vector<absl::string_view> header = absl::StrSplit(lines[0], ',');
  if (header.size() < 6 || header[0] != "sweep_value") {
    return absl::InvalidArgumentError("CSV header is not a result table.");
  }
  ResultTable table;
  table.n_seeds = static_cast<int>(header.size()) - 6;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::vector<absl::string_view> f = absl::StrSplit(lines[i], ',');
    if (f.size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("CSV line ", i + 1, " has ", f.size(), " fields."));
    }
    ResultRow row;
    row.algorithm = std::string(f[1]);
    bool ok = ParseNum(f[0], &row.sweep_value) &&
              ParseNum(f[2], &row.mean_test_error) &&
              ParseNum(f[3], &row.std_test_error) &&
              absl::SimpleAtoi(f[4], &row.n_seeds) &&
              ParseNum(f[5], &row.wall_time_s);
    for (size_t k = 6; ok && k < f.size(); ++k) {
      double v = 0.0;
      ok = ParseNum(f[k], &v);
      row.per_seed.push_back(v);
    }
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrCat("CSV line ", i + 1, " has a malformed number."));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string FormatJson(const ResultTable& table,
                       const ExperimentConfig& config) {
  nlohmann::json root;
  root["config"] = nlohmann::json::parse(ExperimentConfigToJson(config));
  nlohmann::json rows = nlohmann::json::array();
  for (const ResultRow& row : table.rows) {
    nlohmann::json per_seed = nlohmann::json::array();
    for (double e : row.per_seed) per_seed.push_back(JsonNum(e));
    rows.push_back({{"sweep_value", JsonNum(row.sweep_value)},
                    {"algorithm", row.algorithm},
                    {"mean_test_error", JsonNum(row.mean_test_error)},
                    {"std_test_error", JsonNum(row.std_test_error)},
                    {"n_seeds", row.n_seeds},
                    {"wall_time_s", JsonNum(row.wall_time_s)},
                    {"per_seed", per_seed}});
  }
  root["rows"] = rows;
  root["failures"] = table.failures;
  root["warnings"] = table.warnings;
  return root.dump(2) + "\n";
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat(
        "Cannot open '", path, "' for writing: ", std::strerror(errno)));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) {
    return absl::DataLossError(absl::StrCat("Failed writing '", path, "'."));
  }
  return absl::OkStatus();
}

absl::Status Emit(const ResultTable& table, const ExperimentConfig& config,
                  std::string_view format, const std::string& path) {
  if (format == "csv") return WriteFile(path, FormatCsv(table));
  if (format == "json") return WriteFile(path, FormatJson(table, config));
  return absl::InvalidArgumentError(
      absl::StrCat("Unknown output format '", std::string(format), "'."));
}

}  // namespace dpsco::bench
