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

#include "dpsco/bench/libsvm.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dpsco/base/status_macros.h"
#include "dpsco/mechanisms/noise.h"

namespace dpsco::bench {
namespace {

struct Entry {
  int64_t row;
  int column;
  double value;
};

absl::Status LineError(int64_t line, absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("libsvm line ", line, ": ", what));
}

double ScaleToUnit(double max_norm) {
  return max_norm > 1.0 ? 1.0 / max_norm : 1.0;
}

}  // namespace

absl::StatusOr<LabeledDataset> ParseLibsvmText(std::string_view text,
                                               const LibsvmOptions& options) {
  std::vector<Entry> entries;
  std::vector<double> labels;
  int dimension = std::max(options.min_dimension, 0);
  int64_t line_number = 0;
  for (absl::string_view raw :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_number;
    std::string line = absl::StrReplaceAll(raw, {{"\xE2\x88\x92", "-"}});
    absl::string_view body = absl::StripAsciiWhitespace(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<absl::string_view> tokens =
        absl::StrSplit(body, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    double label = 0.0;
    if (!absl::SimpleAtod(tokens[0], &label) || !std::isfinite(label)) {
      return LineError(line_number,
                       absl::StrCat("bad label '", tokens[0], "'"));
    }
    const int64_t row = static_cast<int64_t>(labels.size());
    int last_index = 0;
    for (size_t i = 1; i < tokens.size(); ++i) {
      std::pair<absl::string_view, absl::string_view> kv =
          absl::StrSplit(tokens[i], absl::MaxSplits(':', 1));
      int index = 0;
      double value = 0.0;
      if (!absl::SimpleAtoi(kv.first, &index) || index < 1 ||
          !absl::SimpleAtod(kv.second, &value) || !std::isfinite(value)) {
        return LineError(line_number,
                         absl::StrCat("bad feature '", tokens[i], "'"));
      }
      if (index <= last_index) {
        return LineError(line_number, "feature indices must increase");
      }
      last_index = index;
      dimension = std::max(dimension, index);
      entries.push_back(Entry{row, index - 1, value});
    }
    labels.push_back(label);
  }
  if (labels.empty()) {
    return absl::InvalidArgumentError("libsvm input has no data rows.");
  }
  if (dimension == 0) {
    return absl::InvalidArgumentError("libsvm input has no features.");
  }
  FeatureMatrix features =
      FeatureMatrix::Zero(static_cast<Eigen::Index>(labels.size()), dimension);
  for (const Entry& e : entries) features(e.row, e.column) = e.value;
  Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(
      labels.data(), static_cast<Eigen::Index>(labels.size()));
  ASSIGN_OR_RETURN(LabeledDataset data,
                   LabeledDataset::Create(std::move(features), std::move(y)));
  if (!options.normalize) return data;
  return data.WithScaledFeatures(ScaleToUnit(data.MaxRowNorm()));
}

absl::StatusOr<LabeledDataset> ParseLibsvm(const std::string& path,
                                           const LibsvmOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("Cannot open '", path, "'."));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<LabeledDataset> data = ParseLibsvmText(buffer.str(), options);
  if (!data.ok()) {
    return absl::Status(data.status().code(),
                        absl::StrCat(path, ": ", data.status().message()));
  }
  return data;
}

TrainTest AlignAndNormalize(const LabeledDataset& train,
                            const LabeledDataset& test) {
  const int d = std::max(train.dimension(), test.dimension());
  LabeledDataset a = train.WithDimension(d);
  LabeledDataset b = test.WithDimension(d);
  const double factor =
      ScaleToUnit(std::max(a.MaxRowNorm(), b.MaxRowNorm()));
  TrainTest out{a.WithScaledFeatures(factor), b.WithScaledFeatures(factor), {}};
  return out;
}

absl::StatusOr<TrainTest> PrepareIjcnn1(const LabeledDataset& train,
                                        const LabeledDataset& test,
                                        uint64_t seed) {
  if (test.size() < kIjcnn1MovedRows) {
    return absl::InvalidArgumentError(
        absl::StrCat("ijcnn1 test set has ", test.size(), " rows; ",
                     kIjcnn1MovedRows, " are needed."));
  }
  if (train.dimension() != test.dimension()) {
    return absl::InvalidArgumentError("Train and test dimensions differ.");
  }
  std::vector<int64_t> order(test.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int64_t> moved(order.begin(), order.begin() + kIjcnn1MovedRows);
  std::vector<int64_t> kept(order.begin() + kIjcnn1MovedRows, order.end());
  std::sort(moved.begin(), moved.end());
  std::sort(kept.begin(), kept.end());

  const int64_t n_train = train.size() + kIjcnn1MovedRows;
  FeatureMatrix features(n_train, train.dimension());
  Eigen::VectorXd labels(n_train);
  features.topRows(train.size()) = train.features();
  labels.head(train.size()) = train.labels();
  for (int64_t i = 0; i < kIjcnn1MovedRows; ++i) {
    features.row(train.size() + i) = test.features().row(moved[i]);
    labels[train.size() + i] = test.label(moved[i]);
  }
  ASSIGN_OR_RETURN(LabeledDataset merged,
                   LabeledDataset::Create(std::move(features),
                                          std::move(labels)));
  TrainTest out{std::move(merged), test.Subset(kept), {}};
  if (out.train.size() != kIjcnn1TrainTarget ||
      out.test.size() != kIjcnn1TestTarget) {
    out.warnings.push_back(absl::StrCat(
        "ijcnn1 split is ", out.train.size(), " train / ", out.test.size(),
        " test; expected ", kIjcnn1TrainTarget, " / ", kIjcnn1TestTarget,
        "."));
  }
  return out;
}

}  // namespace dpsco::bench
