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

#include "dpsco/bench/config.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpsco/base/status_macros.h"
#include "json.hpp"

namespace dpsco::bench {
namespace {

using nlohmann::json;

absl::Status CheckKeys(const json& object, absl::string_view where,
                       const std::set<std::string>& allowed) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", where, "' must be an object."));
  }
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Unknown key '", key, "' in '", where, "'; allowed: ",
          absl::StrJoin(allowed, ", "), "."));
    }
  }
  return absl::OkStatus();
}

template <typename T>
void Read(const json& object, const char* key, T& out) {
  if (object.contains(key)) out = object.at(key).get<T>();
}

absl::StatusOr<AlgorithmConfig> ParseAlgorithm(const json& entry) {
  if (entry.is_string()) return ParseAlgorithmSpec(entry.get<std::string>());
  RETURN_IF_ERROR(CheckKeys(entry, "algorithms[]",
                            {"id", "label", "eta", "theta_bar", "gamma",
                             "theta", "tnc_lambda", "tau", "n1", "eta1"}));
  if (!entry.contains("id")) {
    return absl::InvalidArgumentError("Algorithm entry needs an 'id'.");
  }
  ASSIGN_OR_RETURN(AlgorithmConfig a,
                   ParseAlgorithmSpec(entry.at("id").get<std::string>()));
  Read(entry, "label", a.label);
  if (entry.contains("eta")) a.eta = entry.at("eta").get<double>();
  Read(entry, "theta_bar", a.theta_bar);
  Read(entry, "gamma", a.gamma);
  Read(entry, "theta", a.theta);
  Read(entry, "tnc_lambda", a.tnc_lambda);
  Read(entry, "tau", a.tau);
  Read(entry, "n1", a.n1);
  if (entry.contains("eta1")) a.eta1 = entry.at("eta1").get<double>();
  return a;
}

absl::StatusOr<ExperimentConfig> FromJson(const json& root) {
  RETURN_IF_ERROR(CheckKeys(root, "config",
                            {"problem", "algorithms", "sweep", "seeds",
                             "master_seed", "dataset", "privacy", "output",
                             "threads"}));
  ExperimentConfig c;
  if (root.contains("problem")) {
    const json& p = root.at("problem");
    RETURN_IF_ERROR(CheckKeys(p, "problem",
                              {"kind", "radius", "lambda_reg", "theta",
                               "dimension", "label_bound"}));
    if (p.contains("kind")) {
      ASSIGN_OR_RETURN(c.problem.kind,
                       ParseProblemKind(p.at("kind").get<std::string>()));
    }
    Read(p, "radius", c.problem.radius);
    Read(p, "lambda_reg", c.problem.lambda_reg);
    Read(p, "theta", c.problem.theta);
    Read(p, "dimension", c.problem.dimension);
    Read(p, "label_bound", c.problem.label_bound);
  }
  if (root.contains("algorithms")) {
    for (const json& entry : root.at("algorithms")) {
      ASSIGN_OR_RETURN(AlgorithmConfig a, ParseAlgorithm(entry));
      c.algorithms.push_back(std::move(a));
    }
  }
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    RETURN_IF_ERROR(CheckKeys(s, "sweep", {"kind", "values", "fixed_n"}));
    if (s.contains("kind")) {
      const std::string kind = s.at("kind").get<std::string>();
      if (kind == "over_n" || kind == "n") {
        c.sweep = SweepKind::kOverN;
      } else if (kind == "over_epsilon" || kind == "epsilon") {
        c.sweep = SweepKind::kOverEpsilon;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("Unknown sweep kind '", kind, "'."));
      }
    }
    Read(s, "values", c.sweep_values);
    Read(s, "fixed_n", c.fixed_n);
  }
  Read(root, "seeds", c.seeds);
  Read(root, "master_seed", c.master_seed);
  Read(root, "threads", c.threads);
  if (root.contains("dataset")) {
    const json& d = root.at("dataset");
    if (d.is_string()) {
      c.dataset = d.get<std::string>();
    } else {
      RETURN_IF_ERROR(CheckKeys(d, "dataset",
                                {"name", "train", "test", "pool_size",
                                 "test_size", "label_noise"}));
      Read(d, "name", c.dataset);
      Read(d, "train", c.train_path);
      Read(d, "test", c.test_path);
      Read(d, "pool_size", c.pool_size);
      Read(d, "test_size", c.test_size);
      Read(d, "label_noise", c.label_noise);
    }
  }
  if (root.contains("privacy")) {
    const json& p = root.at("privacy");
    RETURN_IF_ERROR(CheckKeys(p, "privacy", {"mode"}));
    if (p.contains("mode")) {
      const std::string mode = p.at("mode").get<std::string>();
      if (mode != "pure" && mode != "approximate") {
        return absl::InvalidArgumentError(
            absl::StrCat("Unknown privacy mode '", mode, "'."));
      }
      c.pure_dp = mode == "pure";
    }
  }
  if (root.contains("output")) {
    const json& o = root.at("output");
    RETURN_IF_ERROR(
        CheckKeys(o, "output", {"path", "format", "record_wall_time"}));
    Read(o, "path", c.output_path);
    Read(o, "format", c.format);
    Read(o, "record_wall_time", c.record_wall_time);
  }
  return c;
}

}  // namespace

std::string SweepKindName(SweepKind kind) {
  return kind == SweepKind::kOverN ? "over_n" : "over_epsilon";
}

absl::Status ValidateConfig(const ExperimentConfig& c) {
  if (c.seeds < 1) {
    return absl::InvalidArgumentError("seeds must be at least 1.");
  }
  if (c.algorithms.empty()) {
    return absl::InvalidArgumentError("No algorithms configured.");
  }
  if (c.sweep_values.empty()) {
    return absl::InvalidArgumentError("Sweep has no values.");
  }
  for (size_t i = 0; i < c.sweep_values.size(); ++i) {
    const double v = c.sweep_values[i];
    if (!(v > 0.0) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Sweep value ", v, " is not positive."));
    }
    if (i > 0 && !(v > c.sweep_values[i - 1])) {
      return absl::InvalidArgumentError(
          "Sweep values must be strictly increasing.");
    }
    if (c.sweep == SweepKind::kOverN && v != std::floor(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Sample size ", v, " is not an integer."));
    }
  }
  if (c.sweep == SweepKind::kOverEpsilon && c.fixed_n < 1) {
    return absl::InvalidArgumentError("fixed_n must be positive.");
  }
  if (c.format != "csv" && c.format != "json") {
    return absl::InvalidArgumentError(
        absl::StrCat("Unknown output format '", c.format, "'."));
  }
  if (c.dataset != "synthetic" && c.dataset != "a9a" &&
      c.dataset != "ijcnn1" && c.dataset != "libsvm") {
    return absl::InvalidArgumentError(
        absl::StrCat("Unknown dataset '", c.dataset, "'."));
  }
  if (c.dataset != "synthetic" &&
      (c.train_path.empty() || c.test_path.empty())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Dataset '", c.dataset, "' needs train and test paths."));
  }
  if (c.threads < 0) {
    return absl::InvalidArgumentError("threads must be nonnegative.");
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    return absl::InvalidArgumentError("Config is not valid JSON.");
  }
  try {
    return FromJson(root);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("Config has a value of the wrong type: ", e.what()));
  }
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("Cannot open '", path, "'."));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str());
}

std::string ExperimentConfigToJson(const ExperimentConfig& c, int indent) {
  json root;
  root["problem"] = {{"kind", ProblemKindName(c.problem.kind)},
                     {"radius", c.problem.radius},
                     {"lambda_reg", c.problem.lambda_reg},
                     {"theta", c.problem.theta},
                     {"dimension", c.problem.dimension},
                     {"label_bound", c.problem.label_bound}};
  json algorithms = json::array();
  for (const AlgorithmConfig& a : c.algorithms) {
    json entry = {{"id", a.id},       {"label", a.label},
                  {"theta_bar", a.theta_bar}, {"gamma", a.gamma},
                  {"theta", a.theta}, {"tnc_lambda", a.tnc_lambda},
                  {"tau", a.tau},     {"n1", a.n1}};
    if (a.eta.has_value()) entry["eta"] = *a.eta;
    if (a.eta1.has_value()) entry["eta1"] = *a.eta1;
    algorithms.push_back(entry);
  }
  root["algorithms"] = algorithms;
  root["sweep"] = {{"kind", SweepKindName(c.sweep)},
                   {"values", c.sweep_values},
                   {"fixed_n", c.fixed_n}};
  root["seeds"] = c.seeds;
  root["master_seed"] = c.master_seed;
  root["threads"] = c.threads;
  root["dataset"] = {{"name", c.dataset},         {"train", c.train_path},
                     {"test", c.test_path},       {"pool_size", c.pool_size},
                     {"test_size", c.test_size},
                     {"label_noise", c.label_noise}};
  root["privacy"] = {{"mode", c.pure_dp ? "pure" : "approximate"}};
  root["output"] = {{"path", c.output_path},
                    {"format", c.format},
                    {"record_wall_time", c.record_wall_time}};
  return root.dump(indent);
}

absl::Status ApplyEnvironment(ExperimentConfig& config) {
  if (const char* seed = std::getenv("DPSCO_SEED"); seed != nullptr) {
    if (!absl::SimpleAtoi(seed, &config.master_seed)) {
      return absl::InvalidArgumentError(
          absl::StrCat("DPSCO_SEED '", seed, "' is not an unsigned integer."));
    }
  }
  if (const char* threads = std::getenv("DPSCO_THREADS"); threads != nullptr) {
    int cap = 0;
    if (!absl::SimpleAtoi(threads, &cap) || cap < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "DPSCO_THREADS '", threads, "' is not a positive integer."));
    }
    config.threads = config.threads == 0 ? cap : std::min(config.threads, cap);
  }
  return absl::OkStatus();
}

}  // namespace dpsco::bench
