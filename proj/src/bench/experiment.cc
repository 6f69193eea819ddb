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

#include "dpsco/bench/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsco/base/status_macros.h"
#include "dpsco/bench/libsvm.h"
#include "dpsco/bench/problem.h"
#include "dpsco/bench/synthetic.h"
#include "dpsco/mechanisms/noise.h"

namespace dpsco::bench {
namespace {

// Stream tags keep the derived seeds of different purposes apart.
enum Stream : uint32_t {
  kSubsample = 1,
  kDriver = 2,
  kSyntheticTrain = 3,
  kSyntheticTest = 4,
  kSyntheticTruth = 5,
  kIjcnn1Split = 6,
};

uint64_t DeriveSeed(uint64_t master, Stream stream, uint32_t a = 0,
                    uint32_t b = 0, uint32_t c = 0) {
  std::seed_seq seq{static_cast<uint32_t>(master),
                    static_cast<uint32_t>(master >> 32),
                    static_cast<uint32_t>(stream), a, b, c};
  uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

int64_t PoolSize(const ExperimentConfig& c) {
  if (c.pool_size > 0) return c.pool_size;
  if (c.sweep == SweepKind::kOverEpsilon) return c.fixed_n;
  return static_cast<int64_t>(c.sweep_values.back());
}

absl::StatusOr<ExperimentData> LoadSynthetic(const ExperimentConfig& c) {
  const int d = c.problem.dimension;
  const int64_t pool = PoolSize(c);
  const uint64_t train_seed = DeriveSeed(c.master_seed, kSyntheticTrain);
  const uint64_t test_seed = DeriveSeed(c.master_seed, kSyntheticTest);
  switch (c.problem.kind) {
    case ProblemKind::kSyntheticTnc: {
      ASSIGN_OR_RETURN(LabeledDataset train, SyntheticTnc(pool, d, train_seed));
      ASSIGN_OR_RETURN(LabeledDataset test,
                       SyntheticTnc(c.test_size, d, test_seed));
      return ExperimentData{std::move(train), std::move(test), {}};
    }
    case ProblemKind::kLinregL1Ball: {
      const Eigen::VectorXd truth = RandomL1Vector(
          d, 0.5 * c.problem.radius, DeriveSeed(c.master_seed, kSyntheticTruth));
      ASSIGN_OR_RETURN(LabeledDataset train,
                       SyntheticLinear(pool, truth, c.label_noise, train_seed));
      ASSIGN_OR_RETURN(
          LabeledDataset test,
          SyntheticLinear(c.test_size, truth, c.label_noise, test_seed));
      return ExperimentData{std::move(train), std::move(test), {}};
    }
    case ProblemKind::kLogregL2Ball: {
      const Eigen::VectorXd truth = RandomL1Vector(
          d, c.problem.radius, DeriveSeed(c.master_seed, kSyntheticTruth));
      ASSIGN_OR_RETURN(
          LabeledDataset train,
          SyntheticClassification(pool, truth, c.label_noise, train_seed));
      ASSIGN_OR_RETURN(LabeledDataset test,
                       SyntheticClassification(c.test_size, truth,
                                               c.label_noise, test_seed));
      return ExperimentData{std::move(train), std::move(test), {}};
    }
  }
  return absl::InvalidArgumentError("Unknown problem kind.");
}

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double SampleStd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

struct CellResult {
  double error = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  std::string failure;
  std::optional<RunRecord> record;
};

}  // namespace

absl::StatusOr<ExperimentData> LoadExperimentData(const ExperimentConfig& c) {
  if (c.dataset == "synthetic") return LoadSynthetic(c);
  LibsvmOptions raw;
  raw.normalize = false;
  ASSIGN_OR_RETURN(LabeledDataset train, ParseLibsvm(c.train_path, raw));
  ASSIGN_OR_RETURN(LabeledDataset test, ParseLibsvm(c.test_path, raw));
  std::vector<std::string> notes;
  if (c.dataset == "ijcnn1") {
    const int d = std::max(train.dimension(), test.dimension());
    ASSIGN_OR_RETURN(TrainTest split,
                     PrepareIjcnn1(train.WithDimension(d),
                                   test.WithDimension(d),
                                   DeriveSeed(c.master_seed, kIjcnn1Split)));
    train = std::move(split.train);
    test = std::move(split.test);
    notes = std::move(split.warnings);
  }
  TrainTest aligned = AlignAndNormalize(train, test);
  notes.push_back(absl::StrFormat("feature scale factor %.17g",
                                  aligned.train.scale_factor()));
  return ExperimentData{std::move(aligned.train), std::move(aligned.test),
                        std::move(notes)};
}

double DeltaForN(int64_t n) {
  return std::pow(static_cast<double>(n), -1.1);
}

double EpsilonForDelta(double delta) {
  return 4.0 * std::sqrt(std::log(1.0 / delta));
}

CellRule RuleFor(const ExperimentConfig& config, double sweep_value) {
  CellRule rule;
  if (config.sweep == SweepKind::kOverN) {
    rule.n = static_cast<int64_t>(sweep_value);
    rule.delta = DeltaForN(rule.n);
    rule.epsilon = EpsilonForDelta(rule.delta);
  } else {
    rule.n = config.fixed_n;
    rule.delta = DeltaForN(rule.n);
    rule.epsilon = sweep_value;
  }
  if (config.pure_dp) rule.delta = 0.0;
  return rule;
}

absl::StatusOr<ResultTable> RunExperiment(const ExperimentConfig& config,
                                          const ExperimentData& data,
                                          std::vector<CellRecord>* records) {
  RETURN_IF_ERROR(ValidateConfig(config));
  const int dimension = data.train.dimension();
  if (data.test.dimension() != dimension) {
    return absl::InvalidArgumentError("Train and test dimensions differ.");
  }
  ASSIGN_OR_RETURN(Problem problem, BuildProblem(config.problem, dimension));

  const size_t n_values = config.sweep_values.size();
  const size_t n_algos = config.algorithms.size();
  const size_t n_seeds = static_cast<size_t>(config.seeds);
  const size_t n_cells = n_values * n_algos * n_seeds;
  std::vector<CellResult> cells(n_cells);

  auto run_cell = [&](size_t index) {
    const size_t seed_index = index % n_seeds;
    const size_t algo_index = (index / n_seeds) % n_algos;
    const size_t value_index = index / (n_seeds * n_algos);
    CellResult& out = cells[index];
    const CellRule rule = RuleFor(config, config.sweep_values[value_index]);
    const AlgorithmConfig& algorithm = config.algorithms[algo_index];
    auto fail = [&](const absl::Status& status) {
      out.failure = absl::StrFormat("%s at %g, seed %d: %s", algorithm.label,
                                    config.sweep_values[value_index],
                                    seed_index, status.ToString());
    };
    if (rule.n > data.train.size()) {
      fail(absl::InvalidArgumentError(absl::StrCat(
          "needs ", rule.n, " training rows, have ", data.train.size())));
      return;
    }
    absl::StatusOr<PrivacyBudget> budget =
        rule.delta == 0.0 ? PrivacyBudget::Pure(rule.epsilon)
                          : PrivacyBudget::Approximate(rule.epsilon, rule.delta);
    if (!budget.ok()) {
      fail(budget.status());
      return;
    }
    // The subsample depends only on the sweep value and seed, so every
    // algorithm sees the same rows.
    std::vector<int64_t> order(data.train.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(DeriveSeed(config.master_seed, kSubsample,
                       static_cast<uint32_t>(value_index),
                       static_cast<uint32_t>(seed_index)));
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(rule.n);
    const LabeledDataset train = data.train.Subset(order);

    const uint64_t driver_seed =
        DeriveSeed(config.master_seed, kDriver,
                   static_cast<uint32_t>(value_index),
                   static_cast<uint32_t>(seed_index),
                   static_cast<uint32_t>(algo_index));
    const auto start = std::chrono::steady_clock::now();
    absl::StatusOr<RunRecord> record =
        RunAlgorithm(algorithm, train, problem, *budget, driver_seed);
    const auto stop = std::chrono::steady_clock::now();
    if (!record.ok()) {
      fail(record.status());
      return;
    }
    absl::StatusOr<double> error =
        EmpiricalRisk(problem.model, record->final_point, data.test);
    if (!error.ok()) {
      fail(error.status());
      return;
    }
    out.error = *error;
    out.seconds = std::chrono::duration<double>(stop - start).count();
    if (records != nullptr) out.record = std::move(*record);
  };

  size_t workers = config.threads > 0
                       ? static_cast<size_t>(config.threads)
                       : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n_cells);
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n_cells; i = next++) run_cell(i);
    });
  }
  for (std::thread& t : pool) t.join();

  ResultTable table;
  table.n_seeds = config.seeds;
  table.warnings = data.notes;
  for (size_t v = 0; v < n_values; ++v) {
    for (size_t a = 0; a < n_algos; ++a) {
      ResultRow row;
      row.sweep_value = config.sweep_values[v];
      row.algorithm = config.algorithms[a].label;
      row.n_seeds = config.seeds;
      double seconds = 0.0;
      for (size_t s = 0; s < n_seeds; ++s) {
        CellResult& cell = cells[(v * n_algos + a) * n_seeds + s];
        row.per_seed.push_back(cell.error);
        seconds += cell.seconds;
        if (!cell.failure.empty()) table.failures.push_back(cell.failure);
        if (records != nullptr && cell.record.has_value()) {
          records->push_back(CellRecord{table.rows.size(),
                                        static_cast<int>(s),
                                        std::move(*cell.record)});
        }
      }
      row.mean_test_error = Mean(row.per_seed);
      row.std_test_error = SampleStd(row.per_seed, row.mean_test_error);
      row.wall_time_s =
          config.record_wall_time ? seconds / static_cast<double>(n_seeds) : 0.0;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace dpsco::bench
