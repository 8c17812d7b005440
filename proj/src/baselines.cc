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

#include "tqdl/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tqdl/errors.h"
#include "tqdl/random.h"

namespace tqdl {

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logreg_logit(const BaselineModel& m, std::span<const double> row,
                    std::span<double> grad) {
  const std::size_t d = m.num_features;
  double z = m.params[d];
  for (std::size_t j = 0; j < d; ++j) z += m.params[j] * row[j];
  if (!grad.empty()) {
    for (std::size_t j = 0; j < d; ++j) grad[j] += row[j];
    grad[d] += 1.0;
  }
  return z;
}

double cnn_logit(const BaselineModel& m, std::span<const double> row,
                 std::span<double> grad) {
  const std::size_t d = m.num_features;
  const std::size_t len = d - kCnnKernel + 1;
  const double* kernel = m.params.data();
  const double* conv_bias = kernel + kCnnChannels * kCnnKernel;
  const double* dense = conv_bias + kCnnChannels;
  const double bias = dense[kCnnChannels];
  const double inv_len = 1.0 / static_cast<double>(len);

  double z = bias;
  for (std::size_t c = 0; c < kCnnChannels; ++c) {
    const double k0 = kernel[c * kCnnKernel], k1 = kernel[c * kCnnKernel + 1],
                 k2 = kernel[c * kCnnKernel + 2];
    double pooled = 0.0;
    double s0 = 0, s1 = 0, s2 = 0, active = 0;  // sums over positions with ReLU on
    for (std::size_t t = 0; t < len; ++t) {
      const double pre = k0 * row[t] + k1 * row[t + 1] + k2 * row[t + 2] + conv_bias[c];
      if (pre > 0) {
        pooled += pre;
        s0 += row[t];
        s1 += row[t + 1];
        s2 += row[t + 2];
        active += 1;
      }
    }
    pooled *= inv_len;
    z += dense[c] * pooled;
    if (!grad.empty()) {
      const double w = dense[c] * inv_len;
      grad[c * kCnnKernel] += w * s0;
      grad[c * kCnnKernel + 1] += w * s1;
      grad[c * kCnnKernel + 2] += w * s2;
      grad[kCnnChannels * kCnnKernel + c] += w * active;
      grad[kCnnChannels * (kCnnKernel + 1) + c] += pooled;
    }
  }
  if (!grad.empty()) grad[kCnnChannels * (kCnnKernel + 2)] += 1.0;
  return z;
}

void check_rows(const FeatureMatrix& features, std::span<const std::size_t> rows,
                std::span<const int> labels) {
  if (rows.empty()) throw std::invalid_argument("baseline: empty training set");
  if (rows.size() != labels.size()) {
    throw std::invalid_argument("baseline: rows/labels length mismatch");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= features.rows) throw std::out_of_range("baseline: row index out of range");
    if (labels[i] != 0 && labels[i] != 1) {
      throw std::invalid_argument("baseline: labels must be 0 or 1");
    }
  }
}

}  // namespace

FeatureMatrix extract_features(std::span<const PhaseSample> samples,
                               FeatureKind kind) {
  FeatureMatrix f;
  f.kind = kind;
  f.rows = samples.size();
  if (samples.empty()) return f;
  if (kind == FeatureKind::kAmplitudeSq) {
    f.cols = samples.front().state.dim();
    f.values.reserve(f.rows * f.cols);
    for (const auto& s : samples) {
      if (s.state.dim() != f.cols) throw DataError("features: mixed state sizes");
      for (const auto& a : s.state.amplitudes()) f.values.push_back(std::norm(a));
    }
  } else {
    f.cols = samples.front().thetas.thetas.size();
    f.values.reserve(f.rows * f.cols);
    for (const auto& s : samples) {
      if (s.thetas.thetas.empty() || s.thetas.thetas.size() != f.cols) {
        throw DataError("features: sample without a full PLGC angle vector");
      }
      f.values.insert(f.values.end(), s.thetas.thetas.begin(), s.thetas.thetas.end());
    }
  }
  return f;
}

void standardize(FeatureMatrix& features, std::span<const std::size_t> train_rows) {
  if (train_rows.empty()) throw std::invalid_argument("standardize: no training rows");
  const std::size_t d = features.cols;
  features.mean.assign(d, 0.0);
  features.stddev.assign(d, 0.0);
  const auto n = static_cast<double>(train_rows.size());
  for (std::size_t r : train_rows) {
    const auto row = features.row(r);
    for (std::size_t j = 0; j < d; ++j) features.mean[j] += row[j];
  }
  for (double& m : features.mean) m /= n;
  for (std::size_t r : train_rows) {
    const auto row = features.row(r);
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = row[j] - features.mean[j];
      features.stddev[j] += dv * dv;
    }
  }
  for (double& s : features.stddev) {
    s = std::sqrt(s / n);
    if (s < 1e-12) s = 0.0;
  }
  for (std::size_t i = 0; i < features.rows; ++i) {
    double* row = features.values.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) {
      if (features.stddev[j] > 0.0) row[j] = (row[j] - features.mean[j]) / features.stddev[j];
    }
  }
}

std::size_t baseline_num_params(ModelKind kind, std::size_t num_features) {
  if (kind == ModelKind::kLogReg) return num_features + 1;
  if (num_features < kCnnKernel) {
    throw std::invalid_argument("CNN needs at least " + std::to_string(kCnnKernel) +
                                " features, got " + std::to_string(num_features));
  }
  return kCnnChannels * (kCnnKernel + 2) + 1;
}

double baseline_logit(const BaselineModel& model, std::span<const double> row,
                      std::span<double> grad) {
  if (row.size() != model.num_features) {
    throw std::invalid_argument("baseline_logit: feature dimension mismatch");
  }
  if (model.params.size() != baseline_num_params(model.kind, model.num_features)) {
    throw std::invalid_argument("baseline_logit: parameter count mismatch");
  }
  if (!grad.empty() && grad.size() != model.params.size()) {
    throw std::invalid_argument("baseline_logit: gradient size mismatch");
  }
  return model.kind == ModelKind::kLogReg ? logreg_logit(model, row, grad)
                                          : cnn_logit(model, row, grad);
}

double baseline_loss(const BaselineModel& model, const FeatureMatrix& features,
                     std::span<const std::size_t> rows, std::span<const int> labels,
                     double l2_strength, std::span<double> grad) {
  check_rows(features, rows, labels);
  const auto n = static_cast<double>(rows.size());
  const std::size_t dim = model.params.size();
  std::vector<double> sample_grad(grad.empty() ? 0 : dim);
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!grad.empty()) std::fill(sample_grad.begin(), sample_grad.end(), 0.0);
    const double z = baseline_logit(model, features.row(rows[i]), sample_grad);
    loss += softplus(z) - labels[i] * z;
    if (!grad.empty()) {
      const double w = (sigmoid(z) - labels[i]) / n;
      for (std::size_t j = 0; j < dim; ++j) grad[j] += w * sample_grad[j];
    }
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    sq += model.params[j] * model.params[j];
    if (!grad.empty()) grad[j] += 2.0 * l2_strength * model.params[j] / n;
  }
  return loss / n + l2_strength * sq / n;
}

void validate(const BaselineConfig& config) {
  if (config.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (config.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(config.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (config.l2_strength < 0.0) throw std::invalid_argument("l2_strength must be >= 0");
  if (config.init_scale < 0.0) throw std::invalid_argument("init_scale must be >= 0");
}

BaselineTrainResult train_baseline(ModelKind kind, const FeatureMatrix& features,
                                   std::span<const std::size_t> rows,
                                   std::span<const int> labels,
                                   const BaselineConfig& config) {
  validate(config);
  check_rows(features, rows, labels);
  if (std::all_of(labels.begin(), labels.end(), [&](int y) { return y == labels[0]; })) {
    throw std::invalid_argument("baseline: training set holds a single class");
  }
  BaselineTrainResult result;
  BaselineModel& m = result.model;
  m.kind = kind;
  m.num_features = features.cols;
  m.params.resize(baseline_num_params(kind, features.cols));
  Rng rng(config.seed);
  for (double& p : m.params) p = config.init_scale * normal(rng);

  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  const std::size_t dim = m.params.size();
  std::vector<double> mom(dim, 0.0), vel(dim, 0.0), grad(dim);
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> batch_rows;
  std::vector<int> batch_labels;
  long step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      batch_rows.clear();
      batch_labels.clear();
      for (std::size_t i = start; i < stop; ++i) {
        batch_rows.push_back(rows[order[i]]);
        batch_labels.push_back(labels[order[i]]);
      }
      epoch_loss += baseline_loss(m, features, batch_rows, batch_labels,
                                  config.l2_strength, grad);
      ++batches;
      ++step;
      const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      for (std::size_t j = 0; j < dim; ++j) {
        mom[j] = kBeta1 * mom[j] + (1.0 - kBeta1) * grad[j];
        vel[j] = kBeta2 * vel[j] + (1.0 - kBeta2) * grad[j] * grad[j];
        m.params[j] -= config.learning_rate * (mom[j] / bc1) /
                       (std::sqrt(vel[j] / bc2) + kEps);
      }
    }
    result.loss_history.push_back(epoch_loss / batches);
  }
  return result;
}

std::vector<int> predict_labels(const BaselineModel& model,
                                const FeatureMatrix& features,
                                std::span<const std::size_t> rows) {
  if (features.cols != model.num_features) {
    throw std::invalid_argument("predict_labels: feature dimension mismatch");
  }
  std::vector<int> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    out.push_back(baseline_logit(model, features.row(r)) > 0.0 ? 1 : -1);
  }
  return out;
}

}  // namespace tqdl
