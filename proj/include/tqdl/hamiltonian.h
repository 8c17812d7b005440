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

#ifndef TQDL_HAMILTONIAN_H_
#define TQDL_HAMILTONIAN_H_

#include <vector>

#include "tqdl/lattice.h"
#include "tqdl/state_vector.h"

namespace tqdl {

// H(x) = -(1 - x) (sum_s A_s + sum_p B_p) - x sum_i Z_i with Z-type stars
// A_s and X-type plaquettes B_p.
struct ToricHamiltonian {
  LatticeGeometry geometry;
  double x = 0.0;
  std::vector<PauliString> star_terms;
  std::vector<PauliString> plaquette_terms;
  std::vector<PauliString> field_terms;

  std::size_t num_terms() const {
    return star_terms.size() + plaquette_terms.size() + field_terms.size();
  }
  template <typename F>
  void for_each_term(F&& f) const {
    for (const auto& t : star_terms) f(t);
    for (const auto& t : plaquette_terms) f(t);
    for (const auto& t : field_terms) f(t);
  }
};

// Throws std::invalid_argument unless 0 <= x <= 1.
ToricHamiltonian build_hamiltonian(const LatticeGeometry& geometry, double x);

double energy(const StateVector& state, const ToricHamiltonian& hamiltonian);

// (1/N) sum_i <Z_i>.
double magnetization_per_qubit(const StateVector& state);

// <m^2>^2 / <m^4> over the diagonal distribution of
// m(b) = (N - 2 popcount(b)) / N. Throws std::domain_error when <m^4> is
// below 1e-14.
double binder_cumulant(const StateVector& state);

}  // namespace tqdl

#endif  // TQDL_HAMILTONIAN_H_
