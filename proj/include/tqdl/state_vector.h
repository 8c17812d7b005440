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

#ifndef TQDL_STATE_VECTOR_H_
#define TQDL_STATE_VECTOR_H_

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace tqdl {

using Complex = std::complex<double>;

// Row-major 2x2 and 4x4 matrices. For a two-qubit matrix acting on
// (q0, q1) the local basis index is 2 * bit(q0) + bit(q1).
using Matrix2 = std::array<Complex, 4>;
using Matrix4 = std::array<Complex, 16>;

inline constexpr std::size_t kMaxQubits = 20;

// Dense state vector. Bit b of a basis index holds the value of qubit b.
class StateVector {
 public:
  // |0...0> on `num_qubits` qubits; throws outside [1, kMaxQubits].
  explicit StateVector(std::size_t num_qubits);

  // Takes ownership of `amplitudes`; the length must be a power of two. The
  // amplitudes are not renormalized.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;
  void normalize();

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  std::size_t num_qubits_;
  std::vector<Complex> amplitudes_;
};

StateVector zero_state(std::size_t num_qubits);

// Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
Matrix2 ry_matrix(double theta);
// Rz(t) = diag(exp(-i t/2), exp(+i t/2)).
Matrix2 rz_matrix(double theta);
// CNOT with the first qubit as control.
Matrix4 cnot_matrix();

Matrix2 matmul(const Matrix2& a, const Matrix2& b);
Matrix4 matmul(const Matrix4& a, const Matrix4& b);
Matrix2 adjoint(const Matrix2& m);
Matrix4 adjoint(const Matrix4& m);
// Kronecker product with `a` on the first (more significant) local qubit.
Matrix4 kron(const Matrix2& a, const Matrix2& b);

bool is_unitary(const Matrix2& u, double tol = 1e-12);
bool is_unitary(const Matrix4& u, double tol = 1e-12);

// Checked gate application. Throws std::out_of_range on bad qubit indices
// and std::invalid_argument on a non-unitary matrix or repeated qubits.
void apply_1q(StateVector& state, std::size_t qubit, const Matrix2& u);
void apply_2q(StateVector& state, std::size_t q0, std::size_t q1,
              const Matrix4& u);
void apply_cnot(StateVector& state, std::size_t control, std::size_t target);
void apply_ry(StateVector& state, std::size_t qubit, double theta);
void apply_rz(StateVector& state, std::size_t qubit, double theta);

// Applies the product of X over `edges`, i.e. permutes amplitudes by XOR
// with the corresponding bit mask.
void apply_x_string(StateVector& state, std::span<const std::size_t> edges);
void apply_x_mask(StateVector& state, std::uint64_t mask);

// Unchecked kernels for hot loops. Indices must be valid and distinct.
namespace kernels {
void apply_1q(std::span<Complex> amps, std::size_t qubit, const Matrix2& u);
void apply_2q(std::span<Complex> amps, std::size_t q0, std::size_t q1,
              const Matrix4& u);
// t[a][b] = sum over the other qubits of conj(bra[.., a]) * ket[.., b],
// with a, b local two-qubit indices as above.
Matrix4 local_overlap_2q(std::span<const Complex> bra,
                         std::span<const Complex> ket, std::size_t q0,
                         std::size_t q1);
double expect_z(std::span<const Complex> amps, std::size_t qubit);
}  // namespace kernels

enum class Pauli : std::uint8_t { I, X, Y, Z };

// Sparse Pauli product with a real coefficient.
class PauliString {
 public:
  PauliString() = default;
  // Throws std::invalid_argument on repeated qubits.
  PauliString(std::vector<std::pair<std::size_t, Pauli>> ops,
              double coefficient = 1.0);

  static PauliString z_string(std::span<const std::size_t> qubits,
                              double coefficient = 1.0);
  static PauliString x_string(std::span<const std::size_t> qubits,
                              double coefficient = 1.0);

  const std::vector<std::pair<std::size_t, Pauli>>& ops() const {
    return ops_;
  }
  double coefficient() const { return coefficient_; }
  void set_coefficient(double c) { coefficient_ = c; }

  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  std::size_t num_y() const { return num_y_; }
  // Largest qubit index referenced plus one (0 for the identity).
  std::size_t support_size() const;

 private:
  std::vector<std::pair<std::size_t, Pauli>> ops_;
  double coefficient_ = 1.0;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  std::size_t num_y_ = 0;
};

// coefficient * <psi|P|psi>.
double expect_pauli(const StateVector& state, const PauliString& pauli);

// out += coefficient * P |in>.
void accumulate_pauli(std::span<const Complex> in, const PauliString& pauli,
                      std::span<Complex> out);

// <a|b>; throws std::invalid_argument on a qubit-count mismatch.
Complex inner_product(const StateVector& a, const StateVector& b);

// Binary "LGSV" state format, version 1: magic, u16 version, u16 qubit count,
// then 2^N (re, im) binary64 pairs, all little-endian.
inline constexpr std::uint16_t kStateFormatVersion = 1;
void write_state(std::ostream& out, const StateVector& state);
StateVector read_state(std::istream& in);

}  // namespace tqdl

#endif  // TQDL_STATE_VECTOR_H_
