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

#include "tqdl/vqe.h"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tqdl/errors.h"
#include "tqdl/hamiltonian.h"

namespace tqdl {

void validate(const VQEConfig& config) {
  if (config.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(config.learning_rate > 0.0)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  if (!(config.perturbation_scale > 0.0)) {
    throw std::invalid_argument("perturbation_scale must be positive");
  }
}

SpsaResult spsa_minimize(const Objective& objective, std::vector<double> initial,
                         const VQEConfig& config, Rng& rng) {
  validate(config);
  const std::size_t dim = initial.size();
  if (dim == 0) throw std::invalid_argument("spsa_minimize: dimension must be >= 1");

  auto evaluate = [&](std::span<const double> point) {
    const double v = objective(point);
    if (!std::isfinite(v)) {
      throw NumericalError("spsa_minimize: non-finite objective value");
    }
    return v;
  };

  SpsaResult result;
  std::vector<double> theta = std::move(initial);
  std::vector<double> delta(dim), probe(dim);
  result.best = theta;
  result.best_value = evaluate(theta);
  result.trace.reserve(static_cast<std::size_t>(config.iterations) + 1);
  result.trace.push_back(result.best_value);

  for (int k = 0; k < config.iterations; ++k) {
    const double step = static_cast<double>(k + 1);
    const double a_k = config.learning_rate / std::pow(step, config.lr_exponent);
    const double c_k =
        config.perturbation_scale / std::pow(step, config.perturbation_exponent);
    for (double& d : delta) d = rademacher(rng);

    for (std::size_t i = 0; i < dim; ++i) probe[i] = theta[i] + c_k * delta[i];
    const double f_plus = evaluate(probe);
    for (std::size_t i = 0; i < dim; ++i) probe[i] = theta[i] - c_k * delta[i];
    const double f_minus = evaluate(probe);

    const double slope = (f_plus - f_minus) / (2.0 * c_k);
    // Rademacher entries are +-1, so dividing by delta equals multiplying.
    for (std::size_t i = 0; i < dim; ++i) theta[i] -= a_k * slope * delta[i];

    const double value = evaluate(theta);
    result.trace.push_back(value);
    if (value < result.best_value) {
      result.best_value = value;
      result.best = theta;
    }
  }
  return result;
}

VQEResult vqe_ground_state(const LatticeGeometry& geometry, double x,
                           const VQEConfig& config) {
  validate(config);
  const ToricHamiltonian hamiltonian = build_hamiltonian(geometry, x);
  const LoopGasEvaluator evaluator(geometry);
  const std::size_t dim = geometry.num_plaquettes();
  if (dim == 0) throw std::invalid_argument("vqe_ground_state: lattice has no plaquettes");

  const Objective objective = [&](std::span<const double> t) {
    return evaluator.energy(t, x);
  };

  VQEResult best;
  best.energy = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < config.trials; ++trial) {
    Rng rng(derive_seed(config.seed,
                        {geometry.rows, geometry.cols,
                         std::bit_cast<std::uint64_t>(x),
                         static_cast<std::uint64_t>(trial)}));
    std::vector<double> init(dim);
    for (double& t : init) t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    try {
      SpsaResult r = spsa_minimize(objective, std::move(init), config, rng);
      if (r.best_value < best.energy) {
        best.energy = r.best_value;
        best.params.thetas = std::move(r.best);
        best.best_trial = trial;
      }
    } catch (const NumericalError&) {
      ++best.failed_trials;
    }
  }
  if (best.best_trial < 0) {
    throw NumericalError("vqe_ground_state: all " +
                         std::to_string(config.trials) + " trials failed");
  }
  best.params = canonicalize(std::move(best.params));
  best.state = prepare_plgc(geometry, best.params);
  best.energy = energy(best.state, hamiltonian);
  return best;
}

}  // namespace tqdl
