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

#include "dpsco/core/dataset.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpsco {

absl::StatusOr<LabeledDataset> LabeledDataset::Create(FeatureMatrix features,
                                                      Eigen::VectorXd labels) {
  if (features.rows() < 1) {
    return absl::InvalidArgumentError("Dataset must contain at least one row.");
  }
  if (labels.size() != features.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Label count ", labels.size(), " does not match row count ",
                     features.rows(), "."));
  }
  if (!features.allFinite()) {
    return absl::InvalidArgumentError("Features contain non-finite entries.");
  }
  if (!labels.allFinite()) {
    return absl::InvalidArgumentError("Labels contain non-finite entries.");
  }
  return LabeledDataset(std::move(features), std::move(labels), 1.0);
}

double LabeledDataset::MaxRowNorm() const {
  return features_.rowwise().norm().maxCoeff();
}

LabeledDataset LabeledDataset::Subset(std::span<const int64_t> rows) const {
  FeatureMatrix features(static_cast<Eigen::Index>(rows.size()),
                         features_.cols());
  Eigen::VectorXd labels(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    features.row(i) = features_.row(rows[i]);
    labels[i] = labels_[rows[i]];
  }
  return LabeledDataset(std::move(features), std::move(labels), scale_factor_);
}

LabeledDataset LabeledDataset::WithScaledFeatures(double factor) const {
  return LabeledDataset(features_ * factor, labels_, scale_factor_ * factor);
}

LabeledDataset LabeledDataset::WithDimension(int dimension) const {
  if (dimension <= features_.cols()) return *this;
  FeatureMatrix features = FeatureMatrix::Zero(features_.rows(), dimension);
  features.leftCols(features_.cols()) = features_;
  return LabeledDataset(std::move(features), labels_, scale_factor_);
}

}  // namespace dpsco
