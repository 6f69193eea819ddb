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

// dpsco command line: run, bench, verify, schedule.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "dpsco/algorithms/schedule.h"
#include "dpsco/base/status_macros.h"
#include "dpsco/bench/config.h"
#include "dpsco/bench/emit.h"
#include "dpsco/bench/experiment.h"
#include "dpsco/bench/problem.h"
#include "dpsco/verify/criteria.h"

namespace {

using dpsco::bench::ExperimentConfig;

int Report(const absl::Status& status) {
  std::cerr << "dpsco: " << status.message() << "\n";
  return 2;
}

// Runs the sweep and writes the table. Returns the process exit code.
int Execute(ExperimentConfig config) {
  if (absl::Status s = dpsco::bench::ApplyEnvironment(config); !s.ok()) {
    return Report(s);
  }
  absl::StatusOr<dpsco::bench::ExperimentData> data =
      dpsco::bench::LoadExperimentData(config);
  if (!data.ok()) return Report(data.status());
  for (const std::string& note : data->notes) {
    std::cerr << "note: " << note << "\n";
  }
  absl::StatusOr<dpsco::bench::ResultTable> table =
      dpsco::bench::RunExperiment(config, *data);
  if (!table.ok()) return Report(table.status());
  for (const std::string& w : table->warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  for (const std::string& f : table->failures) {
    std::cerr << "failed: " << f << "\n";
  }
  if (config.output_path.empty()) {
    std::cout << (config.format == "json"
                      ? dpsco::bench::FormatJson(*table, config)
                      : dpsco::bench::FormatCsv(*table));
  } else {
    absl::Status s = dpsco::bench::Emit(*table, config, config.format,
                                        config.output_path);
    if (!s.ok()) return Report(s);
    std::cerr << "wrote " << config.output_path << "\n";
  }
  return table->ok() ? 0 : 1;
}

absl::Status ParseSweep(const std::string& text, ExperimentConfig& config) {
  const std::vector<std::string> parts =
      absl::StrSplit(text, absl::MaxSplits('=', 1));
  if (parts.size() != 2) {
    return absl::InvalidArgumentError(
        "--sweep takes n=v1,v2,... or epsilon=v1,v2,...");
  }
  if (parts[0] == "n") {
    config.sweep = dpsco::bench::SweepKind::kOverN;
  } else if (parts[0] == "epsilon" || parts[0] == "eps") {
    config.sweep = dpsco::bench::SweepKind::kOverEpsilon;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("Unknown sweep '", parts[0], "'."));
  }
  config.sweep_values.clear();
  const std::vector<std::string> values = absl::StrSplit(parts[1], ',');
  for (const std::string& v : values) {
    double x = 0.0;
    if (!absl::SimpleAtod(v, &x)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Bad sweep value '", v, "'."));
    }
    config.sweep_values.push_back(x);
  }
  return absl::OkStatus();
}

std::string Cell(double v) {
  return std::isnan(v) ? "-" : absl::StrFormat("%.6g", v);
}

void PrintSchedule(const dpsco::Schedule& s) {
  std::cout << "algorithm: " << s.algorithm << "\n";
  std::cout << absl::StrFormat("%6s %10s %14s %14s %14s\n", "stage", "size",
                               "stepsize", "radius", "noise_scale");
  for (const dpsco::StageRow& row : s.stages) {
    std::cout << absl::StrFormat("%6d %10d %14s %14s %14s\n", row.index,
                                 row.size, Cell(row.stepsize),
                                 Cell(row.radius), Cell(row.noise_scale));
  }
  std::cout << "samples used: " << s.SamplesUsed() << "\n";
  for (const std::string& note : s.notes) std::cout << "note: " << note << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private stochastic convex optimization toolkit"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "Run an experiment config file");
  std::string config_path;
  std::string run_out;
  run->add_option("--config", config_path, "JSON experiment config")
      ->required();
  run->add_option("--out", run_out, "Override the output path");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "Run a sweep from flags");
  std::string problem = "linreg_l1";
  std::string dataset = "synthetic";
  std::string algos;
  std::string sweep;
  ExperimentConfig flags;
  bool no_wall_time = false;
  bench->add_option("--problem", problem,
                    "linreg_l1, logreg_l2 or synthetic_tnc");
  bench->add_option("--dataset", dataset,
                    "synthetic, a9a, ijcnn1 or libsvm");
  bench->add_option("--algos", algos, "Comma list of id[:value]")->required();
  bench->add_option("--sweep", sweep, "n=v1,v2,... or epsilon=v1,v2,...")
      ->required();
  bench->add_option("--seeds", flags.seeds, "Seeds per cell");
  bench->add_option("--out", flags.output_path, "Output file (default stdout)");
  bench->add_option("--format", flags.format, "csv or json");
  bench->add_option("--train", flags.train_path, "Training libsvm file");
  bench->add_option("--test", flags.test_path, "Test libsvm file");
  bench->add_option("--radius", flags.problem.radius, "Constraint radius B");
  bench->add_option("--lambda", flags.problem.lambda_reg,
                    "Logistic regularization");
  bench->add_option("--theta", flags.problem.theta, "TNC exponent");
  bench->add_option("--dimension", flags.problem.dimension,
                    "Synthetic feature dimension");
  bench->add_option("--fixed-n", flags.fixed_n, "n for epsilon sweeps");
  bench->add_option("--master-seed", flags.master_seed, "Master seed");
  bench->add_option("--threads", flags.threads, "Worker cap (0 = all cores)");
  bench->add_flag("--pure", flags.pure_dp, "Pure epsilon-DP");
  bench->add_flag("--no-wall-time", no_wall_time,
                  "Write 0 for wall time so output is reproducible");

  // verify
  CLI::App* verify =
      app.add_subcommand("verify", "Run the acceptance criteria");
  std::vector<int> criteria;
  verify->add_option("--criterion", criteria, "Criterion ids (default all)")
      ->check(CLI::Range(1, dpsco::verify::kCriterionCount));

  // schedule
  CLI::App* schedule =
      app.add_subcommand("schedule", "Print an algorithm's stage table");
  dpsco::ScheduleQuery q;
  double beta = 0.0;
  double eta = 0.0;
  double chi0 = 0.0;
  double eta1 = 0.0;
  schedule->add_option("--algo", q.algorithm, "Algorithm id")->required();
  schedule->add_option("--n", q.n, "Sample count")->required();
  schedule->add_option("--d", q.dimension, "Dimension");
  schedule->add_option("--L", q.lipschitz, "Lipschitz constant");
  schedule->add_option("--beta", beta, "Smoothness");
  schedule->add_option("--lambda-sc", q.strong_convexity,
                       "Strong convexity");
  schedule->add_option("--epsilon", q.epsilon, "Epsilon");
  schedule->add_option("--delta", q.delta, "Delta (0 = pure DP)");
  schedule->add_option("--diameter", q.diameter, "Distance bound D");
  schedule->add_option("--eta", eta, "Base stepsize");
  schedule->add_option("--theta-bar", q.theta_bar, "Iterated exponent");
  schedule->add_option("--theta", q.theta, "TNC exponent");
  schedule->add_option("--tnc-lambda", q.tnc_lambda, "TNC constant");
  schedule->add_option("--chi0", chi0, "Initial suboptimality bound");
  schedule->add_option("--gamma", q.gamma, "Proximal weight");
  schedule->add_option("--n1", q.n1, "First epoch size");
  schedule->add_option("--eta1", eta1, "First epoch stepsize");
  schedule->add_option("--tau", q.tau, "Faster-DPSGD-SC exponent");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    absl::StatusOr<ExperimentConfig> config =
        dpsco::bench::LoadExperimentConfig(config_path);
    if (!config.ok()) return Report(config.status());
    if (!run_out.empty()) config->output_path = run_out;
    return Execute(*config);
  }

  if (bench->parsed()) {
    ExperimentConfig config = flags;
    config.dataset = dataset;
    config.record_wall_time = !no_wall_time;
    absl::StatusOr<dpsco::bench::ProblemKind> kind =
        dpsco::bench::ParseProblemKind(problem);
    if (!kind.ok()) return Report(kind.status());
    config.problem.kind = *kind;
    const std::vector<std::string> specs =
        absl::StrSplit(algos, ',', absl::SkipEmpty());
    for (const std::string& spec : specs) {
      absl::StatusOr<dpsco::bench::AlgorithmConfig> a =
          dpsco::bench::ParseAlgorithmSpec(spec);
      if (!a.ok()) return Report(a.status());
      config.algorithms.push_back(*a);
    }
    if (absl::Status s = ParseSweep(sweep, config); !s.ok()) return Report(s);
    if (absl::Status s = dpsco::bench::ValidateConfig(config); !s.ok()) {
      return Report(s);
    }
    return Execute(config);
  }

  if (verify->parsed()) {
    if (criteria.empty()) {
      for (int i = 1; i <= dpsco::verify::kCriterionCount; ++i) {
        criteria.push_back(i);
      }
    }
    const dpsco::verify::VerifyOptions options =
        dpsco::verify::OptionsFromEnvironment();
    bool failed = false;
    for (int id : criteria) {
      const dpsco::verify::CriterionResult r =
          dpsco::verify::RunCriterion(id, options);
      std::cout << dpsco::verify::FormatResult(r) << std::endl;
      failed = failed || r.outcome == dpsco::verify::Outcome::kFail;
    }
    return failed ? 1 : 0;
  }

  if (schedule->parsed()) {
    if (beta > 0) q.smoothness = beta;
    if (eta > 0) q.eta = eta;
    if (chi0 > 0) q.chi0 = chi0;
    if (eta1 > 0) q.eta1 = eta1;
    absl::StatusOr<dpsco::Schedule> s = dpsco::DescribeSchedule(q);
    if (!s.ok()) return Report(s.status());
    PrintSchedule(*s);
    return 0;
  }
  return 0;
}
