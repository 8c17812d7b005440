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

#include "tqdl/state_vector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tqdl {

namespace {

void check_qubit(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " +
                            std::to_string(state.num_qubits()) + " qubits");
  }
}

void check_num_qubits(std::size_t n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n));
  }
}

// Spreads the bits of k around zero bits at positions lo < hi.
inline std::size_t insert_two_zero_bits(std::size_t k, std::size_t lo,
                                        std::size_t hi) {
  const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
  k = ((k & ~lo_mask) << 1) | (k & lo_mask);
  const std::size_t hi_mask = (std::size_t{1} << hi) - 1;
  return ((k & ~hi_mask) << 1) | (k & hi_mask);
}

template <std::size_t D>
bool is_unitary_impl(const std::array<Complex, D * D>& u, double tol) {
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t c = 0; c < D; ++c) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < D; ++k) {
        acc += std::conj(u[k * D + r]) * u[k * D + c];
      }
      const Complex expected = (r == c) ? 1.0 : 0.0;
      if (std::abs(acc - expected) > tol) return false;
    }
  }
  return true;
}

template <std::size_t D>
std::array<Complex, D * D> matmul_impl(const std::array<Complex, D * D>& a,
                                       const std::array<Complex, D * D>& b) {
  std::array<Complex, D * D> out{};
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t k = 0; k < D; ++k) {
      const Complex ark = a[r * D + k];
      for (std::size_t c = 0; c < D; ++c) out[r * D + c] += ark * b[k * D + c];
    }
  }
  return out;
}

template <std::size_t D>
std::array<Complex, D * D> adjoint_impl(const std::array<Complex, D * D>& m) {
  std::array<Complex, D * D> out{};
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t c = 0; c < D; ++c) out[c * D + r] = std::conj(m[r * D + c]);
  }
  return out;
}

// i^num_y * (-1)^popcount(basis & z_mask).
inline Complex pauli_phase(std::uint64_t basis, std::uint64_t z_mask,
                           std::size_t num_y) {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const bool odd = (std::popcount(basis & z_mask) & 1) != 0;
  const Complex base = kIPow[num_y & 3];
  return odd ? -base : base;
}

void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void put_f64(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

bool get_bytes(std::istream& in, unsigned char* dst, std::size_t n) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  check_num_qubits(num_qubits);
  amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t d = amplitudes.size();
  if (d < 2 || !std::has_single_bit(d)) {
    throw std::invalid_argument(
        "amplitude count must be a power of two >= 2, got " +
        std::to_string(d));
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(d));
  check_num_qubits(n);
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::domain_error("cannot normalize a zero vector");
  for (auto& a : amplitudes_) a /= n;
}

StateVector zero_state(std::size_t num_qubits) {
  return StateVector(num_qubits);
}

Matrix2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

Matrix2 rz_matrix(double theta) {
  return {std::polar(1.0, -theta / 2), Complex{0, 0}, Complex{0, 0},
          std::polar(1.0, theta / 2)};
}

Matrix4 cnot_matrix() {
  Matrix4 m{};
  m[0 * 4 + 0] = 1.0;
  m[1 * 4 + 1] = 1.0;
  m[2 * 4 + 3] = 1.0;
  m[3 * 4 + 2] = 1.0;
  return m;
}

Matrix2 matmul(const Matrix2& a, const Matrix2& b) {
  return matmul_impl<2>(a, b);
}
Matrix4 matmul(const Matrix4& a, const Matrix4& b) {
  return matmul_impl<4>(a, b);
}
Matrix2 adjoint(const Matrix2& m) { return adjoint_impl<2>(m); }
Matrix4 adjoint(const Matrix4& m) { return adjoint_impl<4>(m); }

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out{};
  for (std::size_t ar = 0; ar < 2; ++ar)
    for (std::size_t ac = 0; ac < 2; ++ac)
      for (std::size_t br = 0; br < 2; ++br)
        for (std::size_t bc = 0; bc < 2; ++bc)
          out[(2 * ar + br) * 4 + (2 * ac + bc)] = a[ar * 2 + ac] * b[br * 2 + bc];
  return out;
}

bool is_unitary(const Matrix2& u, double tol) {
  return is_unitary_impl<2>(u, tol);
}
bool is_unitary(const Matrix4& u, double tol) {
  return is_unitary_impl<4>(u, tol);
}

namespace kernels {

void apply_1q(std::span<Complex> amps, std::size_t qubit, const Matrix2& u) {
  const std::size_t step = std::size_t{1} << qubit;
  const std::size_t dim = amps.size();
  const Complex u00 = u[0], u01 = u[1], u10 = u[2], u11 = u[3];
  for (std::size_t base = 0; base < dim; base += 2 * step) {
    for (std::size_t i = base; i < base + step; ++i) {
      const Complex a0 = amps[i];
      const Complex a1 = amps[i + step];
      amps[i] = u00 * a0 + u01 * a1;
      amps[i + step] = u10 * a0 + u11 * a1;
    }
  }
}

void apply_2q(std::span<Complex> amps, std::size_t q0, std::size_t q1,
              const Matrix4& u) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const std::size_t lo = std::min(q0, q1), hi = std::max(q0, q1);
  const std::size_t quarter = amps.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i00 = insert_two_zero_bits(k, lo, hi);
    const std::size_t idx[4] = {i00, i00 | m1, i00 | m0, i00 | m0 | m1};
    const Complex v[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]],
                          amps[idx[3]]};
    for (std::size_t r = 0; r < 4; ++r) {
      amps[idx[r]] = u[r * 4 + 0] * v[0] + u[r * 4 + 1] * v[1] +
                     u[r * 4 + 2] * v[2] + u[r * 4 + 3] * v[3];
    }
  }
}

Matrix4 local_overlap_2q(std::span<const Complex> bra,
                         std::span<const Complex> ket, std::size_t q0,
                         std::size_t q1) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const std::size_t lo = std::min(q0, q1), hi = std::max(q0, q1);
  const std::size_t quarter = ket.size() / 4;
  Matrix4 t{};
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i00 = insert_two_zero_bits(k, lo, hi);
    const std::size_t idx[4] = {i00, i00 | m1, i00 | m0, i00 | m0 | m1};
    for (std::size_t a = 0; a < 4; ++a) {
      const Complex ba = std::conj(bra[idx[a]]);
      for (std::size_t b = 0; b < 4; ++b) t[a * 4 + b] += ba * ket[idx[b]];
    }
  }
  return t;
}

double expect_z(std::span<const Complex> amps, std::size_t qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    acc += (i & mask) ? -p : p;
  }
  return acc;
}

}  // namespace kernels

void apply_1q(StateVector& state, std::size_t qubit, const Matrix2& u) {
  check_qubit(state, qubit);
  if (!is_unitary(u)) throw std::invalid_argument("apply_1q: matrix is not unitary");
  kernels::apply_1q(state.amplitudes(), qubit, u);
}

void apply_2q(StateVector& state, std::size_t q0, std::size_t q1,
              const Matrix4& u) {
  check_qubit(state, q0);
  check_qubit(state, q1);
  if (q0 == q1) throw std::invalid_argument("apply_2q: qubits must differ");
  if (!is_unitary(u)) throw std::invalid_argument("apply_2q: matrix is not unitary");
  kernels::apply_2q(state.amplitudes(), q0, q1, u);
}

void apply_cnot(StateVector& state, std::size_t control, std::size_t target) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) {
    throw std::invalid_argument("apply_cnot: control and target must differ");
  }
  const std::size_t cm = std::size_t{1} << control;
  const std::size_t tm = std::size_t{1} << target;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cm) && !(i & tm)) std::swap(amps[i], amps[i | tm]);
  }
}

void apply_ry(StateVector& state, std::size_t qubit, double theta) {
  check_qubit(state, qubit);
  kernels::apply_1q(state.amplitudes(), qubit, ry_matrix(theta));
}

void apply_rz(StateVector& state, std::size_t qubit, double theta) {
  check_qubit(state, qubit);
  kernels::apply_1q(state.amplitudes(), qubit, rz_matrix(theta));
}

void apply_x_mask(StateVector& state, std::uint64_t mask) {
  if (mask == 0) return;
  if (mask >> state.num_qubits()) {
    throw std::out_of_range("apply_x_mask: mask exceeds register");
  }
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t j = i ^ mask;
    if (i < j) std::swap(amps[i], amps[j]);
  }
}

void apply_x_string(StateVector& state, std::span<const std::size_t> edges) {
  std::uint64_t mask = 0;
  for (std::size_t e : edges) {
    check_qubit(state, e);
    mask ^= std::uint64_t{1} << e;
  }
  apply_x_mask(state, mask);
}

PauliString::PauliString(std::vector<std::pair<std::size_t, Pauli>> ops,
                         double coefficient)
    : coefficient_(coefficient) {
  for (const auto& [q, p] : ops) {
    if (q >= 64) throw std::out_of_range("PauliString: qubit index >= 64");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if ((x_mask_ | z_mask_) & bit) {
      throw std::invalid_argument("PauliString: repeated qubit " +
                                  std::to_string(q));
    }
    switch (p) {
      case Pauli::I:
        continue;
      case Pauli::X:
        x_mask_ |= bit;
        break;
      case Pauli::Z:
        z_mask_ |= bit;
        break;
      case Pauli::Y:
        x_mask_ |= bit;
        z_mask_ |= bit;
        ++num_y_;
        break;
    }
    ops_.emplace_back(q, p);
  }
}

PauliString PauliString::z_string(std::span<const std::size_t> qubits,
                                  double coefficient) {
  std::vector<std::pair<std::size_t, Pauli>> ops;
  for (std::size_t q : qubits) ops.emplace_back(q, Pauli::Z);
  return PauliString(std::move(ops), coefficient);
}

PauliString PauliString::x_string(std::span<const std::size_t> qubits,
                                  double coefficient) {
  std::vector<std::pair<std::size_t, Pauli>> ops;
  for (std::size_t q : qubits) ops.emplace_back(q, Pauli::X);
  return PauliString(std::move(ops), coefficient);
}

std::size_t PauliString::support_size() const {
  const std::uint64_t all = x_mask_ | z_mask_;
  return all == 0 ? 0 : 64 - static_cast<std::size_t>(std::countl_zero(all));
}

double expect_pauli(const StateVector& state, const PauliString& pauli) {
  if (pauli.support_size() > state.num_qubits()) {
    throw std::out_of_range("expect_pauli: string exceeds register");
  }
  const auto amps = state.amplitudes();
  const std::uint64_t x = pauli.x_mask(), z = pauli.z_mask();
  if (x == 0) {
    // Diagonal: only the sign pattern matters when there are no Y factors.
    double acc = 0.0;
    for (std::size_t b = 0; b < amps.size(); ++b) {
      const double p = std::norm(amps[b]);
      acc += (std::popcount(b & z) & 1) ? -p : p;
    }
    return pauli.coefficient() * acc;
  }
  Complex acc = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    acc += std::conj(amps[b ^ x]) * pauli_phase(b, z, pauli.num_y()) * amps[b];
  }
  return pauli.coefficient() * acc.real();
}

void accumulate_pauli(std::span<const Complex> in, const PauliString& pauli,
                      std::span<Complex> out) {
  if (in.size() != out.size()) {
    throw std::invalid_argument("accumulate_pauli: size mismatch");
  }
  if ((std::uint64_t{1} << pauli.support_size()) > in.size()) {
    throw std::out_of_range("accumulate_pauli: string exceeds register");
  }
  const std::uint64_t x = pauli.x_mask(), z = pauli.z_mask();
  const double c = pauli.coefficient();
  for (std::size_t b = 0; b < in.size(); ++b) {
    out[b ^ x] += c * pauli_phase(b, z, pauli.num_y()) * in[b];
  }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner_product: qubit counts differ (" +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()) + ")");
  }
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

void write_state(std::ostream& out, const StateVector& state) {
  out.write("LGSV", 4);
  put_u16(out, kStateFormatVersion);
  put_u16(out, static_cast<std::uint16_t>(state.num_qubits()));
  for (const auto& a : state.amplitudes()) {
    put_f64(out, a.real());
    put_f64(out, a.imag());
  }
  if (!out) throw std::runtime_error("write_state: stream failure");
}

StateVector read_state(std::istream& in) {
  unsigned char header[8];
  if (!get_bytes(in, header, sizeof header)) {
    throw std::runtime_error("read_state: truncated header");
  }
  if (header[0] != 'L' || header[1] != 'G' || header[2] != 'S' ||
      header[3] != 'V') {
    throw std::runtime_error("read_state: bad magic");
  }
  const std::uint16_t version = header[4] | (header[5] << 8);
  const std::uint16_t n = header[6] | (header[7] << 8);
  if (version != kStateFormatVersion) {
    throw std::runtime_error("read_state: unsupported format version " +
                             std::to_string(version));
  }
  if (n < 1 || n > kMaxQubits) {
    throw std::runtime_error("read_state: bad qubit count " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<unsigned char> payload(dim * 16);
  if (!get_bytes(in, payload.data(), payload.size())) {
    throw std::runtime_error("read_state: truncated payload");
  }
  std::vector<Complex> amps(dim);
  auto load = [&](std::size_t offset) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= std::uint64_t{payload[offset + i]} << (8 * i);
    }
    return std::bit_cast<double>(bits);
  };
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] = Complex{load(16 * i), load(16 * i + 8)};
  }
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace tqdl
