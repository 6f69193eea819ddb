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

#ifndef DPSCO_CORE_DATASET_H_
#define DPSCO_CORE_DATASET_H_

#include <cstdint>
#include <span>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace dpsco {

// Row-major so that one sample's features are contiguous.
using FeatureMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A non-owning view of one labeled sample.
struct Sample {
  Eigen::Ref<const Eigen::VectorXd> x;
  double y = 0.0;
};

// The sample universe S: n feature vectors of dimension d with real labels.
// Immutable after construction.
class LabeledDataset {
 public:
  // Fails if there are no rows, if the label count differs from the row
  // count, or if any entry is non-finite.
  static absl::StatusOr<LabeledDataset> Create(FeatureMatrix features,
                                               Eigen::VectorXd labels);

  int64_t size() const { return features_.rows(); }
  int dimension() const { return static_cast<int>(features_.cols()); }

  Sample sample(int64_t i) const {
    return Sample{features_.row(i).transpose(), labels_[i]};
  }
  double label(int64_t i) const { return labels_[i]; }

  const FeatureMatrix& features() const { return features_; }
  const Eigen::VectorXd& labels() const { return labels_; }

  // Product of every feature scaling applied since ingestion; 1 when the
  // features are raw.
  double scale_factor() const { return scale_factor_; }

  double MaxRowNorm() const;

  // Rows in the given order. Indices must be in [0, size()).
  LabeledDataset Subset(std::span<const int64_t> rows) const;

  // Multiplies every feature by `factor` and folds it into scale_factor().
  LabeledDataset WithScaledFeatures(double factor) const;

  // Copy whose features are padded with zero columns up to `dimension`.
  LabeledDataset WithDimension(int dimension) const;

 private:
  LabeledDataset(FeatureMatrix features, Eigen::VectorXd labels,
                 double scale_factor)
      : features_(std::move(features)),
        labels_(std::move(labels)),
        scale_factor_(scale_factor) {}

  FeatureMatrix features_;
  Eigen::VectorXd labels_;
  double scale_factor_ = 1.0;
};

}  // namespace dpsco

#endif  // DPSCO_CORE_DATASET_H_
