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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tqdl/errors.h"
#include "tqdl/random.h"

namespace tqdl {

namespace {

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm2(std::span<const Complex> a) {
  double acc = 0.0;
  for (const auto& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

void validate(const LanczosConfig& config) {
  if (config.krylov_dim < 2) throw std::invalid_argument("krylov_dim must be >= 2");
  if (!(config.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (config.max_restarts < 0) throw std::invalid_argument("max_restarts must be >= 0");
}

void apply_hamiltonian(const ToricHamiltonian& hamiltonian,
                       std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t dim = std::size_t{1} << hamiltonian.geometry.num_qubits;
  if (in.size() != dim || out.size() != dim) {
    throw std::invalid_argument("apply_hamiltonian: expected dimension " +
                                std::to_string(dim));
  }
  std::fill(out.begin(), out.end(), Complex{0.0});
  hamiltonian.for_each_term(
      [&](const PauliString& term) { accumulate_pauli(in, term, out); });
}

StateVector apply_hamiltonian(const ToricHamiltonian& hamiltonian,
                              const StateVector& in) {
  StateVector out(in.num_qubits());
  apply_hamiltonian(hamiltonian, in.amplitudes(), out.amplitudes());
  return out;
}

EDResult ground_state_ed(const LatticeGeometry& geometry, double x,
                         const LanczosConfig& config) {
  validate(config);
  if (geometry.num_qubits > kMaxQubits) {
    throw std::invalid_argument("ground_state_ed: too many qubits");
  }
  const ToricHamiltonian h = build_hamiltonian(geometry, x);
  const std::size_t dim = std::size_t{1} << geometry.num_qubits;
  const std::size_t kmax =
      std::min<std::size_t>(static_cast<std::size_t>(config.krylov_dim), dim);

  std::vector<Complex> start(dim);
  Rng rng(config.seed);
  for (auto& v : start) v = normal(rng);
  {
    const double n = norm2(start);
    for (auto& v : start) v /= n;
  }

  std::vector<std::vector<Complex>> basis;
  std::vector<Complex> w(dim), ritz(dim), hr(dim);
  EDResult result;
  for (int restart = 0; restart <= config.max_restarts; ++restart) {
    basis.clear();
    basis.push_back(start);
    std::vector<double> alpha, beta;
    for (std::size_t j = 0; j < kmax; ++j) {
      apply_hamiltonian(h, basis[j], w);
      alpha.push_back(dot(basis[j], w).real());
      // Two passes of Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) axpy(-dot(v, w), v, w);
      }
      const double b = norm2(w);
      if (j + 1 == kmax || b < 1e-12) break;
      beta.push_back(b);
      for (auto& v : w) v /= b;
      basis.push_back(w);
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("ground_state_ed: tridiagonal eigensolve failed");
    }
    const Eigen::VectorXd y = solver.eigenvectors().col(0);

    std::fill(ritz.begin(), ritz.end(), Complex{0.0});
    for (Eigen::Index i = 0; i < m; ++i) {
      axpy(y[i], basis[static_cast<std::size_t>(i)], ritz);
    }
    const double n = norm2(ritz);
    for (auto& v : ritz) v /= n;
    apply_hamiltonian(h, ritz, hr);
    const double e = dot(ritz, hr).real();
    axpy(-e, ritz, hr);
    const double residual = norm2(hr);

    result.energy = e;
    result.residual = residual;
    result.restarts = restart;
    if (residual < config.tolerance) {
      result.state = StateVector::from_amplitudes(ritz);
      return result;
    }
    start = ritz;
  }
  throw NumericalError("ground_state_ed: residual " + std::to_string(result.residual) +
                       " above tolerance after " +
                       std::to_string(config.max_restarts) + " restarts");
}

}  // namespace tqdl
