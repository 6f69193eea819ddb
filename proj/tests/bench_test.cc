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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boost/multiprecision/cpp_bin_float.hpp"
#include "dpsco/bench/config.h"
#include "dpsco/bench/emit.h"
#include "dpsco/bench/experiment.h"
#include "dpsco/bench/libsvm.h"
#include "dpsco/bench/problem.h"
#include "dpsco/bench/synthetic.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "test_util.h"

namespace dpsco::bench {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

TEST(LibsvmTest, ParsesSparseRows) {
  LibsvmOptions raw;
  raw.normalize = false;
  ASSERT_OK_AND_ASSIGN(LabeledDataset data,
                       ParseLibsvmText("+1 1:0.5 3:2\n-1 2:1\n", raw));
  EXPECT_EQ(data.size(), 2);
  EXPECT_EQ(data.dimension(), 3);
  EXPECT_EQ(data.label(0), 1.0);
  EXPECT_EQ(data.label(1), -1.0);
  EXPECT_EQ(data.features()(0, 0), 0.5);
  EXPECT_EQ(data.features()(0, 1), 0.0);
  EXPECT_EQ(data.features()(0, 2), 2.0);
  EXPECT_EQ(data.features()(1, 1), 1.0);
  ASSERT_OK_AND_ASSIGN(data, ParseLibsvmText("1 1:0.5 3:0.5\n", raw));
  EXPECT_EQ(data.label(0), 1.0);
  EXPECT_EQ(data.features().row(0), Eigen::RowVector3d(0.5, 0, 0.5));
}

TEST(LibsvmTest, SkipsBlankAndCommentLines) {
  ASSERT_OK_AND_ASSIGN(LabeledDataset data,
                       ParseLibsvmText("# header\n\n1 1:1\n   \n0 2:1\n"));
  EXPECT_EQ(data.size(), 2);
}

TEST(LibsvmTest, AcceptsUnicodeMinus) {
  ASSERT_OK_AND_ASSIGN(LabeledDataset data,
                       ParseLibsvmText("\xE2\x88\x92" "1 1:\xE2\x88\x92" "0.5\n"));
  EXPECT_EQ(data.label(0), -1.0);
  EXPECT_LT(data.features()(0, 0), 0.0);
}

TEST(LibsvmTest, PadsToMinimumDimension) {
  LibsvmOptions options;
  options.min_dimension = 123;
  ASSERT_OK_AND_ASSIGN(LabeledDataset data, ParseLibsvmText("1 2:1\n", options));
  EXPECT_EQ(data.dimension(), 123);
}

TEST(LibsvmTest, NormalizesByOneCommonFactor) {
  ASSERT_OK_AND_ASSIGN(LabeledDataset data,
                       ParseLibsvmText("1 1:3 2:4\n-1 1:1\n"));
  EXPECT_DOUBLE_EQ(data.MaxRowNorm(), 1.0);
  EXPECT_DOUBLE_EQ(data.scale_factor(), 0.2);
  EXPECT_DOUBLE_EQ(data.features()(1, 0), 0.2);
}

TEST(LibsvmTest, Errors) {
  EXPECT_FALSE(ParseLibsvmText("").ok());
  EXPECT_FALSE(ParseLibsvmText("# only a comment\n").ok());
  EXPECT_FALSE(ParseLibsvmText("abc 1:1\n").ok());
  EXPECT_FALSE(ParseLibsvmText("1 0:1\n").ok());
  EXPECT_FALSE(ParseLibsvmText("1 x:1\n").ok());
  EXPECT_FALSE(ParseLibsvmText("1 1:nan\n").ok());
  EXPECT_FALSE(ParseLibsvmText("1 2:1 1:1\n").ok());
  EXPECT_FALSE(ParseLibsvmText("1\n").ok());
  absl::Status missing = ParseLibsvm("/nonexistent/file.libsvm").status();
  EXPECT_EQ(missing.code(), absl::StatusCode::kNotFound);
  absl::Status line = ParseLibsvmText("1 1:1\n1 1:z\n").status();
  EXPECT_NE(line.message().find("line 2"), std::string::npos);
}

TEST(LibsvmTest, AlignPadsAndSharesScale) {
  LibsvmOptions raw;
  raw.normalize = false;
  const LabeledDataset train = *ParseLibsvmText("1 1:2\n", raw);
  const LabeledDataset test = *ParseLibsvmText("1 3:4\n", raw);
  const TrainTest tt = AlignAndNormalize(train, test);
  EXPECT_EQ(tt.train.dimension(), 3);
  EXPECT_EQ(tt.test.dimension(), 3);
  EXPECT_DOUBLE_EQ(tt.train.features()(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(tt.test.features()(0, 2), 1.0);
}

LabeledDataset Tagged(int64_t n, double offset) {
  // Row i carries offset + i in its first feature so rows can be traced.
  FeatureMatrix x(n, 2);
  Eigen::VectorXd y(n);
  for (int64_t i = 0; i < n; ++i) {
    x(i, 0) = offset + static_cast<double>(i);
    x(i, 1) = 1.0;
    y[i] = i % 2 ? 1.0 : -1.0;
  }
  return *LabeledDataset::Create(std::move(x), std::move(y));
}

TEST(Ijcnn1Test, ConservesAndSeparatesRows) {
  const LabeledDataset train = Tagged(35000, 0.0);
  const LabeledDataset test = Tagged(91701, 1e6);
  ASSERT_OK_AND_ASSIGN(TrainTest tt, PrepareIjcnn1(train, test, 9));
  EXPECT_EQ(tt.train.size(), kIjcnn1TrainTarget);
  EXPECT_EQ(tt.test.size(), kIjcnn1TestTarget);
  EXPECT_TRUE(tt.warnings.empty());
  std::set<double> seen;
  for (int64_t i = 0; i < tt.train.size(); ++i) {
    seen.insert(tt.train.features()(i, 0));
  }
  for (int64_t i = 0; i < tt.test.size(); ++i) {
    EXPECT_EQ(seen.count(tt.test.features()(i, 0)), 0u);
    seen.insert(tt.test.features()(i, 0));
  }
  EXPECT_EQ(seen.size(), static_cast<size_t>(35000 + 91701));
  // The original training rows stay in front.
  for (int64_t i = 0; i < 35000; ++i) {
    ASSERT_EQ(tt.train.features()(i, 0), static_cast<double>(i));
  }
}

TEST(Ijcnn1Test, SeedFixesTheSplit) {
  const LabeledDataset train = Tagged(100, 0.0);
  const LabeledDataset test = Tagged(80100, 1e6);
  ASSERT_OK_AND_ASSIGN(TrainTest a, PrepareIjcnn1(train, test, 3));
  ASSERT_OK_AND_ASSIGN(TrainTest b, PrepareIjcnn1(train, test, 3));
  ASSERT_OK_AND_ASSIGN(TrainTest c, PrepareIjcnn1(train, test, 4));
  EXPECT_EQ(a.test.features(), b.test.features());
  EXPECT_EQ(a.train.features(), b.train.features());
  EXPECT_NE(a.test.features(), c.test.features());
}

TEST(Ijcnn1Test, WarnsOnUnexpectedSizesAndRejectsSmallTest) {
  ASSERT_OK_AND_ASSIGN(TrainTest tt,
                       PrepareIjcnn1(Tagged(10, 0), Tagged(80005, 1e6), 1));
  EXPECT_FALSE(tt.warnings.empty());
  EXPECT_FALSE(PrepareIjcnn1(Tagged(10, 0), Tagged(100, 1e6), 1).ok());
}

TEST(SyntheticTest, ShapesAndDeterminism) {
  const Eigen::VectorXd w = RandomL1Vector(6, 1.0, 3);
  EXPECT_NEAR(w.lpNorm<1>(), 1.0, 1e-12);
  ASSERT_OK_AND_ASSIGN(LabeledDataset a, SyntheticLinear(100, w, 0.1, 4));
  ASSERT_OK_AND_ASSIGN(LabeledDataset b, SyntheticLinear(100, w, 0.1, 4));
  EXPECT_EQ(a.features(), b.features());
  EXPECT_EQ(a.labels(), b.labels());
  EXPECT_LE(a.MaxRowNorm(), 1.0 + 1e-12);
  for (int64_t i = 0; i < a.size(); ++i) {
    EXPECT_LE(std::abs(a.label(i) - a.features().row(i).dot(w)), 0.1);
  }
  ASSERT_OK_AND_ASSIGN(LabeledDataset c,
                       SyntheticClassification(100, w, 0.0, 4));
  for (int64_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(std::abs(c.label(i)), 1.0);
  }
  ASSERT_OK_AND_ASSIGN(LabeledDataset t, SyntheticTnc(50, 4, 5));
  EXPECT_NEAR(t.MaxRowNorm(), 1.0, 1e-12);
  EXPECT_FALSE(SyntheticTnc(0, 4, 5).ok());
}

TEST(ProblemTest, DeclaredConstants) {
  ProblemConfig linreg;
  linreg.radius = 1.0;
  linreg.label_bound = 1.0;
  ASSERT_OK_AND_ASSIGN(Problem p, BuildProblem(linreg, 8));
  EXPECT_DOUBLE_EQ(p.model.lipschitz(), 4.0);
  EXPECT_DOUBLE_EQ(*p.model.smoothness(), 2.0);
  EXPECT_EQ(p.set.kind(), FeasibleSet::Kind::kL1Ball);

  ProblemConfig logreg;
  logreg.kind = ProblemKind::kLogregL2Ball;
  logreg.radius = 2.0;
  logreg.lambda_reg = 0.01;
  ASSERT_OK_AND_ASSIGN(p, BuildProblem(logreg, 8));
  EXPECT_DOUBLE_EQ(p.model.lipschitz(), 1.02);
  EXPECT_DOUBLE_EQ(*p.model.smoothness(), 0.26);
  EXPECT_DOUBLE_EQ(p.model.strong_convexity(), 0.01);
  EXPECT_EQ(p.set.kind(), FeasibleSet::Kind::kL2Ball);

  ProblemConfig tnc;
  tnc.kind = ProblemKind::kSyntheticTnc;
  tnc.theta = 2.0;
  ASSERT_OK_AND_ASSIGN(p, BuildProblem(tnc, 8));
  EXPECT_DOUBLE_EQ(p.model.lipschitz(), 2.0);
  EXPECT_DOUBLE_EQ(*p.model.smoothness(), 1.0);
  EXPECT_DOUBLE_EQ(p.model.strong_convexity(), 1.0);
}

TEST(ProblemTest, AlgorithmSpecs) {
  ASSERT_OK_AND_ASSIGN(AlgorithmConfig a,
                       ParseAlgorithmSpec("iterated_phased_sgd:1.5"));
  EXPECT_EQ(a.id, "iterated_phased_sgd");
  EXPECT_EQ(a.label, "iterated_phased_sgd:1.5");
  EXPECT_EQ(a.theta_bar, 1.5);
  ASSERT_OK_AND_ASSIGN(a, ParseAlgorithmSpec("epoch_dp_sgd:64"));
  EXPECT_EQ(a.n1, 64);
  ASSERT_OK_AND_ASSIGN(a, ParseAlgorithmSpec("phased_sgd"));
  EXPECT_FALSE(a.eta.has_value());
  EXPECT_FALSE(ParseAlgorithmSpec("sgd").ok());
  EXPECT_FALSE(ParseAlgorithmSpec("psa:3").ok());
  EXPECT_FALSE(ParseAlgorithmSpec("psa2:x").ok());
  ASSERT_OK_AND_ASSIGN(ProblemKind kind, ParseProblemKind("synthetic_tnc"));
  EXPECT_EQ(kind, ProblemKind::kSyntheticTnc);
  EXPECT_FALSE(ParseProblemKind("svm").ok());
}

TEST(PrivacyRuleTest, DeltaAndEpsilonForN) {
  EXPECT_DOUBLE_EQ(DeltaForN(10000), std::pow(10000.0, -1.1));
  const Big delta = pow(Big(10000), Big("-1.1"));
  const Big eps = 4 * sqrt(log(1 / delta));
  const double got = EpsilonForDelta(DeltaForN(10000));
  EXPECT_LE(static_cast<double>(abs((Big(got) - eps) / eps)), 1e-13);
  EXPECT_NEAR(got, 12.7319, 1e-4);
}

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.problem.kind = ProblemKind::kSyntheticTnc;
  c.problem.dimension = 4;
  c.algorithms = {*ParseAlgorithmSpec("phased_sgd"),
                  *ParseAlgorithmSpec("iterated_phased_sgd:2")};
  c.sweep_values = {256, 512};
  c.seeds = 3;
  c.master_seed = 11;
  c.test_size = 300;
  c.record_wall_time = false;
  c.threads = 2;
  return c;
}

TEST(ConfigTest, JsonRoundTrip) {
  ExperimentConfig c = SmallConfig();
  c.algorithms.push_back(*ParseAlgorithmSpec("phased_erm:0.5"));
  c.algorithms.back().eta1 = 0.25;
  c.pure_dp = true;
  c.format = "json";
  c.output_path = "out.json";
  ASSERT_OK_AND_ASSIGN(ExperimentConfig back,
                       ParseExperimentConfig(ExperimentConfigToJson(c)));
  EXPECT_EQ(back, c);
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_FALSE(ParseExperimentConfig("{\"sed\": 1}").ok());
  EXPECT_FALSE(ParseExperimentConfig("{\"seeds\": \"x\"}").ok());
  EXPECT_FALSE(ParseExperimentConfig("not json").ok());
  EXPECT_FALSE(
      ParseExperimentConfig("{\"privacy\": {\"mode\": \"none\"}}").ok());
  ExperimentConfig c = SmallConfig();
  EXPECT_OK(ValidateConfig(c));
  c.sweep_values = {512, 256};
  EXPECT_FALSE(ValidateConfig(c).ok());
  c = SmallConfig();
  c.sweep_values = {100.5};
  EXPECT_FALSE(ValidateConfig(c).ok());
  c = SmallConfig();
  c.dataset = "a9a";
  EXPECT_FALSE(ValidateConfig(c).ok());
  c = SmallConfig();
  c.format = "xml";
  EXPECT_FALSE(ValidateConfig(c).ok());
}

TEST(ConfigTest, EnvironmentOverrides) {
  ExperimentConfig c = SmallConfig();
  c.threads = 0;
  setenv("DPSCO_SEED", "77", 1);
  setenv("DPSCO_THREADS", "3", 1);
  ASSERT_OK(ApplyEnvironment(c));
  EXPECT_EQ(c.master_seed, 77u);
  EXPECT_EQ(c.threads, 3);
  c.threads = 2;
  ASSERT_OK(ApplyEnvironment(c));
  EXPECT_EQ(c.threads, 2);
  setenv("DPSCO_THREADS", "zero", 1);
  EXPECT_FALSE(ApplyEnvironment(c).ok());
  unsetenv("DPSCO_SEED");
  unsetenv("DPSCO_THREADS");
}

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    config_ = SmallConfig();
    ASSERT_OK_AND_ASSIGN(data_, LoadExperimentData(config_));
  }
  ExperimentConfig config_;
  std::optional<ExperimentData> data_;
};

TEST_F(ExperimentTest, TableShapeAndStatistics) {
  ASSERT_OK_AND_ASSIGN(ResultTable table, RunExperiment(config_, *data_));
  ASSERT_TRUE(table.ok());
  ASSERT_EQ(table.rows.size(), 4u);
  EXPECT_EQ(table.n_seeds, 3);
  EXPECT_EQ(table.rows[0].sweep_value, 256);
  EXPECT_EQ(table.rows[1].algorithm, "iterated_phased_sgd:2");
  for (const ResultRow& row : table.rows) {
    ASSERT_EQ(row.per_seed.size(), 3u);
    const double mean =
        std::accumulate(row.per_seed.begin(), row.per_seed.end(), 0.0) / 3;
    EXPECT_NEAR(row.mean_test_error, mean, 1e-12);
    double ss = 0;
    for (double e : row.per_seed) ss += (e - mean) * (e - mean);
    EXPECT_NEAR(row.std_test_error, std::sqrt(ss / 2), 1e-12);
    EXPECT_EQ(row.wall_time_s, 0.0);
  }
}

TEST_F(ExperimentTest, SingleCellShape) {
  config_.seeds = 1;
  config_.sweep_values = {1024};
  config_.algorithms.resize(1);
  ASSERT_OK_AND_ASSIGN(ExperimentData data, LoadExperimentData(config_));
  ASSERT_OK_AND_ASSIGN(ResultTable table, RunExperiment(config_, data));
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0].per_seed.size(), 1u);
  EXPECT_EQ(table.rows[0].std_test_error, 0.0);
}

TEST_F(ExperimentTest, OutputIsByteDeterministicAcrossThreads) {
  ASSERT_OK_AND_ASSIGN(ResultTable a, RunExperiment(config_, *data_));
  config_.threads = 1;
  ASSERT_OK_AND_ASSIGN(ResultTable b, RunExperiment(config_, *data_));
  EXPECT_EQ(FormatCsv(a), FormatCsv(b));
  EXPECT_EQ(FormatJson(a, SmallConfig()), FormatJson(b, SmallConfig()));
  config_.master_seed = 12;
  ASSERT_OK_AND_ASSIGN(ResultTable c, RunExperiment(config_, *data_));
  EXPECT_NE(FormatCsv(a), FormatCsv(c));
}

TEST_F(ExperimentTest, RecordsPassAudits) {
  std::vector<CellRecord> records;
  ASSERT_OK_AND_ASSIGN(ResultTable table,
                       RunExperiment(config_, *data_, &records));
  EXPECT_EQ(records.size(), 12u);
  for (const CellRecord& r : records) {
    EXPECT_OK(AuditLedger(r.record));
    EXPECT_OK(AuditNoiseScales(r.record));
  }
}

TEST_F(ExperimentTest, TooFewRowsIsACellFailure) {
  config_.sweep_values = {256, 100000};
  ASSERT_OK_AND_ASSIGN(ResultTable table, RunExperiment(config_, *data_));
  EXPECT_FALSE(table.ok());
  EXPECT_TRUE(std::isnan(table.rows.back().mean_test_error));
}

ResultTable HandTable() {
  ResultTable t;
  t.n_seeds = 2;
  ResultRow row;
  row.sweep_value = 1024;
  row.algorithm = "psa";
  row.per_seed = {0.1, 1.0 / 3.0};
  row.mean_test_error = (0.1 + 1.0 / 3.0) / 2;
  row.std_test_error = 0.16499158227686109;
  row.n_seeds = 2;
  row.wall_time_s = 0.125;
  t.rows.push_back(row);
  row.algorithm = "psa2";
  row.per_seed = {std::nan(""), 2e-300};
  row.mean_test_error = std::nan("");
  t.rows.push_back(row);
  return t;
}

TEST(EmitTest, CsvHeaderOnly) {
  ResultTable empty;
  empty.n_seeds = 2;
  EXPECT_EQ(FormatCsv(empty),
            "sweep_value,algorithm,mean_test_error,std_test_error,n_seeds,"
            "wall_time_s,seed_0,seed_1\n");
}

TEST(EmitTest, CsvRoundTripIsBitExact) {
  const ResultTable t = HandTable();
  const std::string csv = FormatCsv(t);
  ASSERT_OK_AND_ASSIGN(ResultTable back, ParseCsv(csv));
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.n_seeds, 2);
  EXPECT_EQ(back.rows[0], t.rows[0]);
  EXPECT_EQ(back.rows[1].per_seed[1], 2e-300);
  EXPECT_TRUE(std::isnan(back.rows[1].mean_test_error));
  EXPECT_EQ(FormatCsv(back), csv);
}

TEST(EmitTest, JsonEchoesConfig) {
  const ExperimentConfig config = SmallConfig();
  const nlohmann::json j = nlohmann::json::parse(FormatJson(HandTable(), config));
  ASSERT_OK_AND_ASSIGN(ExperimentConfig echoed,
                       ParseExperimentConfig(j.at("config").dump()));
  EXPECT_EQ(echoed, config);
  ASSERT_EQ(j.at("rows").size(), 2u);
  EXPECT_EQ(j.at("rows")[0].at("algorithm"), "psa");
  EXPECT_TRUE(j.at("rows")[1].at("mean_test_error").is_null());
  EXPECT_EQ(j.at("rows")[0].at("per_seed").size(), 2u);
}

TEST(EmitTest, WritesFiles) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "dpsco_emit_test.csv").string();
  ASSERT_OK(Emit(HandTable(), SmallConfig(), "csv", path));
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  EXPECT_EQ(buffer.str(), FormatCsv(HandTable()));
  std::filesystem::remove(path);
  EXPECT_FALSE(WriteFile("/nonexistent/dir/x.csv", "x").ok());
}

}  // namespace
}  // namespace dpsco::bench
