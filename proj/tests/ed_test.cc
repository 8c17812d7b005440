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

#include "tqdl/ed.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"
#include "tqdl/errors.h"
#include "tqdl/random.h"

namespace tqdl {
namespace {

StateVector random_state(std::size_t n, Rng& rng) {
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& v : a) v = Complex(normal(rng), normal(rng));
  StateVector s = StateVector::from_amplitudes(std::move(a));
  s.normalize();
  return s;
}

// Dense oracle assembled column by column.
double dense_ground_energy(const ToricHamiltonian& h) {
  const std::size_t dim = std::size_t{1} << h.geometry.num_qubits;
  Eigen::MatrixXd m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector e(h.geometry.num_qubits);
    e[0] = 0;
    e[j] = 1;
    const StateVector col = apply_hamiltonian(h, e);
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = col[i].real();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

TEST(ApplyHamiltonian, Examples) {
  const auto g = build_lattice(2, 2);
  const StateVector out = apply_hamiltonian(build_hamiltonian(g, 1.0), StateVector(4));
  EXPECT_DOUBLE_EQ(out[0].real(), -4.0);
  StateVector cat(4);
  cat[0] = 1 / std::sqrt(2.0);
  cat[15] = 1 / std::sqrt(2.0);
  const StateVector hc = apply_hamiltonian(build_hamiltonian(g, 0.0), cat);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(hc[i] + 5.0 * cat[i]), 0.0, 1e-15);
  EXPECT_THROW(apply_hamiltonian(build_hamiltonian(g, 0.0), StateVector(3)), std::invalid_argument);
}

TEST(ApplyHamiltonian, LinearAndHermitian) {
  Rng rng(1);
  const auto h = build_hamiltonian(build_lattice(2, 3), 0.37);
  for (int t = 0; t < 10; ++t) {
    const StateVector a = random_state(7, rng), b = random_state(7, rng);
    const Complex alpha(0.3, -1.2), beta(-0.7, 0.4);
    StateVector mix(7);
    for (std::size_t i = 0; i < mix.dim(); ++i) mix[i] = alpha * a[i] + beta * b[i];
    const StateVector ha = apply_hamiltonian(h, a), hb = apply_hamiltonian(h, b);
    const StateVector hm = apply_hamiltonian(h, mix);
    for (std::size_t i = 0; i < mix.dim(); ++i) {
      EXPECT_NEAR(std::abs(hm[i] - alpha * ha[i] - beta * hb[i]), 0.0, 1e-12);
    }
    EXPECT_NEAR(std::abs(inner_product(a, hb) - std::conj(inner_product(b, ha))), 0.0, 1e-12);
  }
}

TEST(GroundStateEd, StabilizerPoint) {
  const EDResult r = ground_state_ed(build_lattice(2, 2), 0.0);
  EXPECT_NEAR(r.energy, -5.0, 1e-9);
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
}

TEST(GroundStateEd, FieldPoint) {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}}) {
    const auto g = build_lattice(rows, cols);
    const EDResult r = ground_state_ed(g, 1.0);
    EXPECT_NEAR(r.energy, -static_cast<double>(g.num_qubits), 1e-9);
    EXPECT_NEAR(std::abs(r.state[0]), 1.0, 1e-8);
  }
}

TEST(GroundStateEd, MatchesDenseOracle) {
  Rng rng(2);
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
    const auto g = build_lattice(rows, cols);
    for (double x : {0.5, 0.1, 0.25, 0.8}) {
      LanczosConfig cfg;
      cfg.seed = uniform_index(rng, 1000);
      EXPECT_NEAR(ground_state_ed(g, x, cfg).energy,
                  dense_ground_energy(build_hamiltonian(g, x)), 1e-9);
    }
  }
}

TEST(GroundStateEd, ReportsNonConvergence) {
  LanczosConfig cfg;
  cfg.krylov_dim = 2;
  cfg.max_restarts = 0;
  cfg.tolerance = 1e-14;
  EXPECT_THROW(ground_state_ed(build_lattice(3, 3), 0.3, cfg), NumericalError);
  cfg.krylov_dim = 1;
  EXPECT_THROW(ground_state_ed(build_lattice(2, 2), 0.3, cfg), std::invalid_argument);
}

}  // namespace
}  // namespace tqdl
