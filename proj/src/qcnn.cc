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

#include "tqdl/qcnn.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "tqdl/errors.h"
#include "tqdl/random.h"

namespace tqdl {

namespace {

// A block is a product of elementary gates on local qubits 0 and 1.
struct Factor {
  enum class Kind { kRy, kRz, kCnot } kind;
  int local = 0;     // 0 or 1 for rotations
  int param = -1;    // index into the block's angle list
  double sign = 1.0;
};

constexpr Factor kConvFactors[] = {
    {Factor::Kind::kRz, 0, 0},    {Factor::Kind::kRy, 0, 1},
    {Factor::Kind::kRz, 0, 2},    {Factor::Kind::kRz, 1, 3},
    {Factor::Kind::kRy, 1, 4},    {Factor::Kind::kRz, 1, 5},
    {Factor::Kind::kCnot, 0, -1}, {Factor::Kind::kRy, 1, 6},
    {Factor::Kind::kCnot, 0, -1}, {Factor::Kind::kRy, 1, 7},
};

constexpr Factor kPoolFactors[] = {
    {Factor::Kind::kRy, 0, 0},        {Factor::Kind::kRz, 0, 1},
    {Factor::Kind::kRy, 1, 2},        {Factor::Kind::kRz, 1, 3},
    {Factor::Kind::kCnot, 0, -1},     {Factor::Kind::kRz, 1, 3, -1.0},
    {Factor::Kind::kRy, 1, 2, -1.0},
};

Matrix2 identity2() { return {Complex{1}, Complex{0}, Complex{0}, Complex{1}}; }

Matrix2 ry_derivative(double t) {
  const double c = std::cos(t / 2) / 2, s = std::sin(t / 2) / 2;
  return {Complex{-s}, Complex{-c}, Complex{c}, Complex{-s}};
}

Matrix2 rz_derivative(double t) {
  return {Complex{0, -0.5} * std::polar(1.0, -t / 2), Complex{0}, Complex{0},
          Complex{0, 0.5} * std::polar(1.0, t / 2)};
}

Matrix4 embed(const Matrix2& m, int local) {
  return local == 0 ? kron(m, identity2()) : kron(identity2(), m);
}

Matrix4 factor_matrix(const Factor& f, std::span<const double> angles,
                      bool derivative) {
  if (f.kind == Factor::Kind::kCnot) return cnot_matrix();
  const double t = f.sign * angles[static_cast<std::size_t>(f.param)];
  Matrix2 m;
  if (f.kind == Factor::Kind::kRy) {
    m = derivative ? ry_derivative(t) : ry_matrix(t);
  } else {
    m = derivative ? rz_derivative(t) : rz_matrix(t);
  }
  if (derivative) {
    for (auto& v : m) v *= f.sign;
  }
  return embed(m, f.local);
}

Matrix4 identity4() {
  Matrix4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i * 5] = 1.0;
  return m;
}

Matrix4 block_unitary(std::span<const Factor> factors,
                      std::span<const double> angles) {
  Matrix4 u = identity4();
  for (const auto& f : factors) u = matmul(factor_matrix(f, angles, false), u);
  return u;
}

std::vector<Matrix4> block_derivatives(std::span<const Factor> factors,
                                       std::span<const double> angles) {
  std::vector<Matrix4> out(angles.size(), Matrix4{});
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].param < 0) continue;
    Matrix4 u = identity4();
    for (std::size_t j = 0; j < factors.size(); ++j) {
      u = matmul(factor_matrix(factors[j], angles, j == k), u);
    }
    auto& acc = out[static_cast<std::size_t>(factors[k].param)];
    for (std::size_t i = 0; i < 16; ++i) acc[i] += u[i];
  }
  return out;
}

void apply_factors(StateVector& state, std::size_t q0, std::size_t q1,
                   std::span<const Factor> factors,
                   std::span<const double> angles) {
  for (const auto& f : factors) {
    const std::size_t q = f.local == 0 ? q0 : q1;
    switch (f.kind) {
      case Factor::Kind::kCnot:
        apply_cnot(state, q0, q1);
        break;
      case Factor::Kind::kRy:
        apply_ry(state, q, f.sign * angles[static_cast<std::size_t>(f.param)]);
        break;
      case Factor::Kind::kRz:
        apply_rz(state, q, f.sign * angles[static_cast<std::size_t>(f.param)]);
        break;
    }
  }
}

// Flattened schedule of blocks with precomputed matrices.
struct Block {
  std::size_t q0, q1;
  std::size_t param_offset;
  std::size_t num_params;
  const Matrix4* unitary;
  const Matrix4* unitary_adj;
  const std::vector<Matrix4>* derivatives;
};

struct Schedule {
  std::vector<Matrix4> unitaries, adjoints;
  std::vector<std::vector<Matrix4>> derivatives;
  std::vector<Block> blocks;
};

Schedule make_schedule(const QCNNArchitecture& arch, const QCNNParams& params,
                       bool with_derivatives) {
  if (params.values.size() != arch.num_params()) {
    throw std::invalid_argument("QCNN expects " +
                                std::to_string(arch.num_params()) +
                                " parameters, got " +
                                std::to_string(params.values.size()));
  }
  Schedule s;
  const std::size_t n_stages = arch.stages.size();
  s.unitaries.reserve(2 * n_stages);
  s.adjoints.reserve(2 * n_stages);
  s.derivatives.reserve(2 * n_stages);
  for (std::size_t st = 0; st < n_stages; ++st) {
    s.unitaries.push_back(conv_unitary(params.conv(st)));
    s.unitaries.push_back(pool_unitary(params.pool(st)));
    s.adjoints.push_back(adjoint(s.unitaries[2 * st]));
    s.adjoints.push_back(adjoint(s.unitaries[2 * st + 1]));
    s.derivatives.push_back(with_derivatives
                                ? conv_unitary_derivatives(params.conv(st))
                                : std::vector<Matrix4>{});
    s.derivatives.push_back(with_derivatives
                                ? pool_unitary_derivatives(params.pool(st))
                                : std::vector<Matrix4>{});
  }
  for (std::size_t st = 0; st < n_stages; ++st) {
    const auto& stage = arch.stages[st];
    for (const auto& [a, b] : stage.conv_pairs) {
      s.blocks.push_back({a, b, st * kStageParams, kConvParams,
                          &s.unitaries[2 * st], &s.adjoints[2 * st],
                          &s.derivatives[2 * st]});
    }
    for (const auto& [d, k] : stage.pool_pairs) {
      s.blocks.push_back({d, k, st * kStageParams + kConvParams, kPoolParams,
                          &s.unitaries[2 * st + 1], &s.adjoints[2 * st + 1],
                          &s.derivatives[2 * st + 1]});
    }
  }
  return s;
}

void check_input(const StateVector& state, const QCNNArchitecture& arch) {
  if (state.num_qubits() != arch.num_qubits) {
    throw std::invalid_argument("QCNN built for " +
                                std::to_string(arch.num_qubits) +
                                " qubits, state has " +
                                std::to_string(state.num_qubits()));
  }
}

void check_batch(std::span<const StateVector* const> states,
                 std::span<const int> labels) {
  if (states.empty()) throw std::invalid_argument("QCNN loss: empty batch");
  if (states.size() != labels.size()) {
    throw std::invalid_argument("QCNN loss: states/labels length mismatch");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw std::invalid_argument("QCNN loss: labels must be 0 or 1");
  }
}

double clamped_probability(double y_out) {
  return std::clamp((1.0 + y_out) / 2.0, kProbabilityClamp,
                    1.0 - kProbabilityClamp);
}

}  // namespace

std::vector<std::size_t> QCNNArchitecture::active_counts() const {
  std::vector<std::size_t> out;
  for (const auto& s : stages) out.push_back(s.active.size());
  out.push_back(1);
  return out;
}

QCNNArchitecture build_architecture(std::size_t n) {
  if (n < 2) throw std::invalid_argument("QCNN needs at least 2 qubits");
  QCNNArchitecture arch;
  arch.num_qubits = n;
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  while (active.size() > 1) {
    QCNNStage stage;
    stage.active = active;
    const std::size_t m = active.size();
    for (std::size_t i = 0; i + 1 < m; i += 2) {
      stage.conv_pairs.emplace_back(active[i], active[i + 1]);
    }
    stage.num_even_pairs = stage.conv_pairs.size();
    for (std::size_t i = 1; i + 1 < m; i += 2) {
      stage.conv_pairs.emplace_back(active[i], active[i + 1]);
    }
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i + 1 < m; i += 2) {
      stage.pool_pairs.emplace_back(active[i], active[i + 1]);
      next.push_back(active[i + 1]);
    }
    if (m % 2 == 1) {
      stage.passthrough = active[m - 1];
      next.push_back(active[m - 1]);
    }
    arch.stages.push_back(std::move(stage));
    active = std::move(next);
  }
  arch.output_qubit = active.front();
  return arch;
}

void conv_block(StateVector& state, std::size_t q0, std::size_t q1,
                std::span<const double> alpha) {
  if (alpha.size() != kConvParams) throw std::invalid_argument("conv_block: need 8 angles");
  if (q0 == q1) throw std::invalid_argument("conv_block: qubits must differ");
  apply_factors(state, q0, q1, kConvFactors, alpha);
}

void pool_block(StateVector& state, std::size_t q_discard, std::size_t q_keep,
                std::span<const double> beta) {
  if (beta.size() != kPoolParams) throw std::invalid_argument("pool_block: need 4 angles");
  if (q_discard == q_keep) throw std::invalid_argument("pool_block: qubits must differ");
  apply_factors(state, q_discard, q_keep, kPoolFactors, beta);
}

Matrix4 conv_unitary(std::span<const double> alpha) {
  return block_unitary(kConvFactors, alpha);
}
Matrix4 pool_unitary(std::span<const double> beta) {
  return block_unitary(kPoolFactors, beta);
}
std::vector<Matrix4> conv_unitary_derivatives(std::span<const double> alpha) {
  return block_derivatives(kConvFactors, alpha);
}
std::vector<Matrix4> pool_unitary_derivatives(std::span<const double> beta) {
  return block_derivatives(kPoolFactors, beta);
}

void apply_qcnn(StateVector& state, const QCNNArchitecture& arch,
                const QCNNParams& params) {
  check_input(state, arch);
  const Schedule s = make_schedule(arch, params, false);
  for (const auto& b : s.blocks) {
    kernels::apply_2q(state.amplitudes(), b.q0, b.q1, *b.unitary);
  }
}

double qcnn_forward(const StateVector& state, const QCNNArchitecture& arch,
                    const QCNNParams& params) {
  StateVector psi = state;
  apply_qcnn(psi, arch, params);
  return kernels::expect_z(psi.amplitudes(), arch.output_qubit);
}

double qcnn_forward_gradient(const StateVector& state,
                             const QCNNArchitecture& arch,
                             const QCNNParams& params,
                             std::span<double> grad) {
  check_input(state, arch);
  if (grad.size() != arch.num_params()) {
    throw std::invalid_argument("qcnn_forward_gradient: gradient size mismatch");
  }
  const Schedule s = make_schedule(arch, params, true);
  StateVector psi = state;
  for (const auto& b : s.blocks) {
    kernels::apply_2q(psi.amplitudes(), b.q0, b.q1, *b.unitary);
  }
  const double y = kernels::expect_z(psi.amplitudes(), arch.output_qubit);

  StateVector lambda = psi;
  const std::size_t out_mask = std::size_t{1} << arch.output_qubit;
  for (std::size_t i = 0; i < lambda.dim(); ++i) {
    if (i & out_mask) lambda[i] = -lambda[i];
  }

  std::fill(grad.begin(), grad.end(), 0.0);
  for (auto it = s.blocks.rbegin(); it != s.blocks.rend(); ++it) {
    const Block& b = *it;
    kernels::apply_2q(psi.amplitudes(), b.q0, b.q1, *b.unitary_adj);
    const Matrix4 t =
        kernels::local_overlap_2q(lambda.amplitudes(), psi.amplitudes(), b.q0, b.q1);
    for (std::size_t j = 0; j < b.num_params; ++j) {
      const Matrix4& d = (*b.derivatives)[j];
      Complex acc = 0.0;
      for (std::size_t k = 0; k < 16; ++k) acc += d[k] * t[k];
      grad[b.param_offset + j] += 2.0 * acc.real();
    }
    kernels::apply_2q(lambda.amplitudes(), b.q0, b.q1, *b.unitary_adj);
  }
  return y;
}

double bce_from_output(double y_out, int label) {
  const double p = clamped_probability(y_out);
  return label == 1 ? -std::log(p) : -std::log(1.0 - p);
}

double bce_output_derivative(double y_out, int label) {
  const double raw = (1.0 + y_out) / 2.0;
  if (raw < kProbabilityClamp || raw > 1.0 - kProbabilityClamp) return 0.0;
  return label == 1 ? -0.5 / raw : 0.5 / (1.0 - raw);
}

double qcnn_loss(std::span<const StateVector* const> states,
                 std::span<const int> labels, const QCNNArchitecture& arch,
                 const QCNNParams& params, double l2_strength) {
  check_batch(states, labels);
  const auto n = static_cast<double>(states.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    loss += bce_from_output(qcnn_forward(*states[i], arch, params), labels[i]);
  }
  double sq = 0.0;
  for (double v : params.values) sq += v * v;
  return loss / n + l2_strength * sq / n;
}

double qcnn_gradient(std::span<const StateVector* const> states,
                     std::span<const int> labels, const QCNNArchitecture& arch,
                     const QCNNParams& params, double l2_strength,
                     std::span<double> grad) {
  check_batch(states, labels);
  if (grad.size() != arch.num_params()) {
    throw std::invalid_argument("qcnn_gradient: gradient size mismatch");
  }
  const auto n = static_cast<double>(states.size());
  std::vector<double> sample_grad(arch.num_params());
  std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double y = qcnn_forward_gradient(*states[i], arch, params, sample_grad);
    loss += bce_from_output(y, labels[i]);
    const double w = bce_output_derivative(y, labels[i]) / n;
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += w * sample_grad[j];
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < grad.size(); ++j) {
    sq += params.values[j] * params.values[j];
    grad[j] += 2.0 * l2_strength * params.values[j] / n;
  }
  return loss / n + l2_strength * sq / n;
}

void validate(const TrainConfig& config) {
  if (config.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (config.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(config.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (config.l2_strength < 0.0) throw std::invalid_argument("l2_strength must be >= 0");
  if (!(config.lr_decay_factor > 0.0)) throw std::invalid_argument("lr_decay_factor must be positive");
  if (config.lr_decay_every < 1) throw std::invalid_argument("lr_decay_every must be >= 1");
  if (config.convergence_delta < 0.0) throw std::invalid_argument("convergence_delta must be >= 0");
  if (config.convergence_patience < 1) throw std::invalid_argument("convergence_patience must be >= 1");
}

TrainResult train_qcnn(std::span<const StateVector* const> states,
                       std::span<const int> labels,
                       const QCNNArchitecture& arch, const TrainConfig& config) {
  validate(config);
  check_batch(states, labels);
  Rng rng(config.seed);
  TrainResult result;
  result.params.values.resize(arch.num_params());
  for (double& v : result.params.values) {
    v = uniform(rng, -config.init_scale, config.init_scale);
  }

  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  const std::size_t dim = arch.num_params();
  std::vector<double> m(dim, 0.0), v(dim, 0.0), grad(dim);
  std::vector<std::size_t> order(states.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<const StateVector*> batch_states;
  std::vector<int> batch_labels;
  long step = 0;
  int quiet_epochs = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = config.learning_rate *
                      std::pow(config.lr_decay_factor, epoch / config.lr_decay_every);
    shuffle(std::span<std::size_t>(order), rng);
    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      batch_states.clear();
      batch_labels.clear();
      for (std::size_t i = start; i < stop; ++i) {
        batch_states.push_back(states[order[i]]);
        batch_labels.push_back(labels[order[i]]);
      }
      epoch_loss += qcnn_gradient(batch_states, batch_labels, arch,
                                  result.params, config.l2_strength, grad);
      ++batches;
      ++step;
      const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      for (std::size_t j = 0; j < dim; ++j) {
        m[j] = kBeta1 * m[j] + (1.0 - kBeta1) * grad[j];
        v[j] = kBeta2 * v[j] + (1.0 - kBeta2) * grad[j] * grad[j];
        result.params.values[j] -= lr * (m[j] / bc1) / (std::sqrt(v[j] / bc2) + kEps);
      }
    }
    result.loss_history.push_back(epoch_loss / batches);
    const std::size_t h = result.loss_history.size();
    if (h >= 2 && std::abs(result.loss_history[h - 1] - result.loss_history[h - 2]) <
                      config.convergence_delta) {
      if (++quiet_epochs >= config.convergence_patience) {
        result.converged = true;
        break;
      }
    } else {
      quiet_epochs = 0;
    }
  }
  return result;
}

int phase_from_output(double y_out) { return y_out <= 0.0 ? -1 : 1; }

int predict_phase(const StateVector& state, const QCNNArchitecture& arch,
                  const QCNNParams& params) {
  return phase_from_output(qcnn_forward(state, arch, params));
}

void write_params(std::ostream& out, const QCNNArchitecture& arch,
                  const QCNNParams& params) {
  if (params.values.size() != arch.num_params()) {
    throw std::invalid_argument("write_params: parameter count mismatch");
  }
  auto join = [](const auto& values, auto fmt) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ", ";
      s += fmt(values[i]);
    }
    return s;
  };
  auto g17 = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  auto dec = [](std::size_t v) { return std::to_string(v); };
  out << "{\n"
      << "  \"format\": \"tqdl-qcnn-params\",\n"
      << "  \"version\": " << kParamsFormatVersion << ",\n"
      << "  \"num_qubits\": " << arch.num_qubits << ",\n"
      << "  \"active_counts\": [" << join(arch.active_counts(), dec) << "],\n"
      << "  \"params\": [" << join(params.values, g17) << "]\n"
      << "}\n";
  if (!out) throw std::runtime_error("write_params: stream failure");
}

std::pair<QCNNArchitecture, QCNNParams> read_params(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("params file: ") + e.what());
  }
  try {
    if (doc.at("format") != "tqdl-qcnn-params") throw DataError("params file: wrong format tag");
    if (doc.at("version").get<int>() != kParamsFormatVersion) {
      throw DataError("params file: unsupported version " + doc.at("version").dump());
    }
    auto arch = build_architecture(doc.at("num_qubits").get<std::size_t>());
    if (doc.at("active_counts").get<std::vector<std::size_t>>() != arch.active_counts()) {
      throw DataError("params file: stage list does not match architecture");
    }
    QCNNParams params{doc.at("params").get<std::vector<double>>()};
    if (params.values.size() != arch.num_params()) {
      throw DataError("params file: expected " + std::to_string(arch.num_params()) +
                      " parameters");
    }
    return {std::move(arch), std::move(params)};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("params file: ") + e.what());
  }
}

}  // namespace tqdl
