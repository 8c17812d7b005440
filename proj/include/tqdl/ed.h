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

#ifndef TQDL_ED_H_
#define TQDL_ED_H_

#include <cstdint>
#include <span>

#include "tqdl/hamiltonian.h"
#include "tqdl/lattice.h"
#include "tqdl/state_vector.h"

namespace tqdl {

struct LanczosConfig {
  int krylov_dim = 80;
  double tolerance = 1e-8;  // on ||H psi - E psi||
  int max_restarts = 30;
  std::uint64_t seed = 0;
};

void validate(const LanczosConfig& config);

// out = H in, matrix-free. Throws std::invalid_argument on a size mismatch.
void apply_hamiltonian(const ToricHamiltonian& hamiltonian,
                       std::span<const Complex> in, std::span<Complex> out);
StateVector apply_hamiltonian(const ToricHamiltonian& hamiltonian,
                              const StateVector& in);

struct EDResult {
  double energy = 0.0;
  StateVector state{1};
  double residual = 0.0;
  int restarts = 0;
};

// Lowest eigenpair of H(x) by restarted Lanczos with full
// reorthogonalization. Throws NumericalError if the residual is still above
// tolerance after max_restarts.
EDResult ground_state_ed(const LatticeGeometry& geometry, double x,
                         const LanczosConfig& config = {});

}  // namespace tqdl

#endif  // TQDL_ED_H_
