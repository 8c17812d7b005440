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

#ifndef TQDL_QCNN_H_
#define TQDL_QCNN_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tqdl/state_vector.h"

namespace tqdl {

// One convolution + pooling stage over the currently active qubits.
struct QCNNStage {
  std::vector<std::size_t> active;
  // Brickwork: the first `num_even_pairs` entries pair active positions
  // (0,1), (2,3), ...; the rest pair (1,2), (3,4), ...
  std::vector<std::pair<std::size_t, std::size_t>> conv_pairs;
  std::size_t num_even_pairs = 0;
  // (discard, keep): the discarded qubit controls the CNOT and is never
  // touched again.
  std::vector<std::pair<std::size_t, std::size_t>> pool_pairs;
  std::optional<std::size_t> passthrough;
};

struct QCNNArchitecture {
  std::size_t num_qubits = 0;
  std::vector<QCNNStage> stages;
  std::size_t output_qubit = 0;

  std::size_t num_params() const { return 12 * stages.size(); }
  // Active qubit count entering each stage, followed by the final 1.
  std::vector<std::size_t> active_counts() const;
};

inline constexpr std::size_t kConvParams = 8;
inline constexpr std::size_t kPoolParams = 4;
inline constexpr std::size_t kStageParams = kConvParams + kPoolParams;

// Flat parameter vector in stage order: alpha_1..alpha_8, beta_1..beta_4.
struct QCNNParams {
  std::vector<double> values;

  std::span<const double> conv(std::size_t stage) const {
    return std::span<const double>(values).subspan(stage * kStageParams,
                                                   kConvParams);
  }
  std::span<const double> pool(std::size_t stage) const {
    return std::span<const double>(values).subspan(
        stage * kStageParams + kConvParams, kPoolParams);
  }
};

// Throws std::invalid_argument for n < 2.
QCNNArchitecture build_architecture(std::size_t n);

// Rz(a1) Ry(a2) Rz(a3) on q0, Rz(a4) Ry(a5) Rz(a6) on q1, CNOT(q0 -> q1),
// Ry(a7) on q1, CNOT(q0 -> q1), Ry(a8) on q1. Applied gate by gate.
void conv_block(StateVector& state, std::size_t q0, std::size_t q1,
                std::span<const double> alpha);
// Ry(b1) Rz(b2) on the discard qubit, Ry(b3) Rz(b4) on the keep qubit,
// CNOT(discard -> keep), Rz(-b4) Ry(-b3) on the keep qubit.
void pool_block(StateVector& state, std::size_t q_discard, std::size_t q_keep,
                std::span<const double> beta);

// The same blocks as single 4x4 unitaries on (q0, q1) and their derivatives
// with respect to each angle.
Matrix4 conv_unitary(std::span<const double> alpha);
Matrix4 pool_unitary(std::span<const double> beta);
std::vector<Matrix4> conv_unitary_derivatives(std::span<const double> alpha);
std::vector<Matrix4> pool_unitary_derivatives(std::span<const double> beta);

// Applies the full network to `state` in place.
void apply_qcnn(StateVector& state, const QCNNArchitecture& arch,
                const QCNNParams& params);

// <Z> on the output qubit after the network. Discarded qubits stay in the
// register unmeasured, which is equivalent to tracing them out.
double qcnn_forward(const StateVector& state, const QCNNArchitecture& arch,
                    const QCNNParams& params);

// y_out and d y_out / d params by a reverse (adjoint) sweep.
double qcnn_forward_gradient(const StateVector& state,
                             const QCNNArchitecture& arch,
                             const QCNNParams& params,
                             std::span<double> grad);

// Labels are 0 (topological) or 1 (ferromagnetic).
//   L = -(1/B) sum [y log p + (1-y) log(1-p)] + l2 |phi|^2 / B
// with p = (1 + y_out) / 2 clamped to [1e-7, 1 - 1e-7].
inline constexpr double kProbabilityClamp = 1e-7;

double qcnn_loss(std::span<const StateVector* const> states,
                 std::span<const int> labels, const QCNNArchitecture& arch,
                 const QCNNParams& params, double l2_strength);

// Returns the loss and writes its gradient into `grad`.
double qcnn_gradient(std::span<const StateVector* const> states,
                     std::span<const int> labels, const QCNNArchitecture& arch,
                     const QCNNParams& params, double l2_strength,
                     std::span<double> grad);

// BCE term and its derivative with respect to y_out, shared with tests.
double bce_from_output(double y_out, int label);
double bce_output_derivative(double y_out, int label);

struct TrainConfig {
  int epochs = 100;
  int batch_size = 24;
  double learning_rate = 0.01;
  double l2_strength = 1e-4;
  double lr_decay_factor = 0.5;
  int lr_decay_every = 30;
  double convergence_delta = 1e-3;
  // Consecutive epochs under convergence_delta needed to stop.
  int convergence_patience = 10;
  double init_scale = 3.141592653589793;  // uniform in [-scale, scale)
  std::uint64_t seed = 0;
};

void validate(const TrainConfig& config);

struct TrainResult {
  QCNNParams params;
  std::vector<double> loss_history;  // mean minibatch loss per epoch
  bool converged = false;
};

// Adam with bias correction and a step learning-rate schedule. Stops once
// two successive epoch losses differ by less than convergence_delta.
TrainResult train_qcnn(std::span<const StateVector* const> states,
                       std::span<const int> labels,
                       const QCNNArchitecture& arch, const TrainConfig& config);

// -1 (topological) when y_out <= 0, otherwise +1.
int phase_from_output(double y_out);
int predict_phase(const StateVector& state, const QCNNArchitecture& arch,
                  const QCNNParams& params);

// Trained-parameter document: architecture descriptor plus the flat
// parameter vector, numbers written with 17 significant digits.
inline constexpr int kParamsFormatVersion = 1;
void write_params(std::ostream& out, const QCNNArchitecture& arch,
                  const QCNNParams& params);
// Returns the architecture rebuilt from the stored input size, after checking
// the stored stage list; throws DataError on mismatch.
std::pair<QCNNArchitecture, QCNNParams> read_params(std::istream& in);

}  // namespace tqdl

#endif  // TQDL_QCNN_H_
