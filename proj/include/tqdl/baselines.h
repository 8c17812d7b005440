// Copyright 2026 The toricqdl Authors
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

#ifndef TQDL_BASELINES_H_
#define TQDL_BASELINES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "tqdl/datastore.h"

namespace tqdl {

enum class FeatureKind { kAmplitudeSq, kPlgcTheta };

// Row-major n_samples x n_features.
struct FeatureMatrix {
  FeatureKind kind = FeatureKind::kPlgcTheta;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<double> mean;    // filled by standardize()
  std::vector<double> stddev;  // 0 marks a column left unscaled

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * cols, cols);
  }
};

// Raw |psi_b|^2 (2^N columns) or PLGC angles (one column per plaquette).
// Throws DataError when angle features are requested and a sample has none.
FeatureMatrix extract_features(std::span<const PhaseSample> samples,
                               FeatureKind kind);

// z-scores every column with statistics from `train_rows` (population
// stddev). Columns whose training stddev is below 1e-12 are left untouched.
void standardize(FeatureMatrix& features, std::span<const std::size_t> train_rows);

// Logistic regression: [weights..., bias].
// 1D CNN: 8 channels of width-3 valid convolution with ReLU, global average
// pooling, then a dense layer to one logit. Layout: [kernel 8x3, conv bias 8,
// dense 8, bias].
enum class ModelKind { kLogReg, kCnn1d };

inline constexpr std::size_t kCnnChannels = 8;
inline constexpr std::size_t kCnnKernel = 3;

struct BaselineModel {
  ModelKind kind = ModelKind::kLogReg;
  std::size_t num_features = 0;
  std::vector<double> params;
};

// Throws std::invalid_argument if a CNN gets fewer features than its kernel.
std::size_t baseline_num_params(ModelKind kind, std::size_t num_features);

// Logit for one feature row; with a non-empty `grad`, adds d logit/d params.
double baseline_logit(const BaselineModel& model, std::span<const double> row,
                      std::span<double> grad = {});

// Mean BCE over `rows` (labels in {0, 1}) plus l2 * ||params||^2 / n. Writes
// the exact gradient when `grad` is non-empty.
double baseline_loss(const BaselineModel& model, const FeatureMatrix& features,
                     std::span<const std::size_t> rows, std::span<const int> labels,
                     double l2_strength, std::span<double> grad = {});

struct BaselineConfig {
  int epochs = 100;
  int batch_size = 24;
  double learning_rate = 0.01;
  double l2_strength = 1e-4;
  double init_scale = 0.1;  // normal init stddev
  std::uint64_t seed = 0;
};

void validate(const BaselineConfig& config);

struct BaselineTrainResult {
  BaselineModel model;
  std::vector<double> loss_history;
};

// Adam on baseline_loss. Throws std::invalid_argument for an empty or
// single-class training set.
BaselineTrainResult train_baseline(ModelKind kind, const FeatureMatrix& features,
                                   std::span<const std::size_t> rows,
                                   std::span<const int> labels,
                                   const BaselineConfig& config);

inline BaselineTrainResult train_logreg(const FeatureMatrix& features,
                                        std::span<const std::size_t> rows,
                                        std::span<const int> labels,
                                        const BaselineConfig& config) {
  return train_baseline(ModelKind::kLogReg, features, rows, labels, config);
}

inline BaselineTrainResult train_cnn1d(const FeatureMatrix& features,
                                       std::span<const std::size_t> rows,
                                       std::span<const int> labels,
                                       const BaselineConfig& config) {
  return train_baseline(ModelKind::kCnn1d, features, rows, labels, config);
}

// +1 when the logit is positive, otherwise -1.
std::vector<int> predict_labels(const BaselineModel& model,
                                const FeatureMatrix& features,
                                std::span<const std::size_t> rows);

}  // namespace tqdl

#endif  // TQDL_BASELINES_H_
