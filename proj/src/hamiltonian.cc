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

#include "tqdl/hamiltonian.h"

#include <bit>
#include <stdexcept>
#include <string>

namespace tqdl {

ToricHamiltonian build_hamiltonian(const LatticeGeometry& geometry, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("field parameter x must lie in [0, 1], got " +
                                std::to_string(x));
  }
  ToricHamiltonian h;
  h.geometry = geometry;
  h.x = x;
  const double stabilizer = -(1.0 - x);
  for (const auto& star : geometry.stars) {
    h.star_terms.push_back(PauliString::z_string(star, stabilizer));
  }
  for (const auto& plaquette : geometry.plaquettes) {
    h.plaquette_terms.push_back(PauliString::x_string(plaquette, stabilizer));
  }
  for (std::size_t q = 0; q < geometry.num_qubits; ++q) {
    const std::size_t qs[1] = {q};
    h.field_terms.push_back(PauliString::z_string(qs, -x));
  }
  return h;
}

double energy(const StateVector& state, const ToricHamiltonian& hamiltonian) {
  if (state.num_qubits() != hamiltonian.geometry.num_qubits) {
    throw std::invalid_argument(
        "energy: state has " + std::to_string(state.num_qubits()) +
        " qubits, Hamiltonian expects " +
        std::to_string(hamiltonian.geometry.num_qubits));
  }
  double e = 0.0;
  hamiltonian.for_each_term(
      [&](const PauliString& term) { e += expect_pauli(state, term); });
  return e;
}

double magnetization_per_qubit(const StateVector& state) {
  const auto n = static_cast<double>(state.num_qubits());
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    acc += std::norm(amps[b]) * (n - 2.0 * std::popcount(b));
  }
  return acc / n;
}

double binder_cumulant(const StateVector& state) {
  const auto n = static_cast<double>(state.num_qubits());
  double m2 = 0.0, m4 = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double m = (n - 2.0 * std::popcount(b)) / n;
    const double p = std::norm(amps[b]);
    m2 += p * m * m;
    m4 += p * m * m * m * m;
  }
  if (m4 <= 1e-14) {
    throw std::domain_error("binder_cumulant: vanishing fourth moment");
  }
  return m2 * m2 / m4;
}

}  // namespace tqdl
