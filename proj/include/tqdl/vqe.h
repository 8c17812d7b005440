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

#ifndef TQDL_VQE_H_
#define TQDL_VQE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tqdl/lattice.h"
#include "tqdl/plgc.h"
#include "tqdl/random.h"
#include "tqdl/state_vector.h"

namespace tqdl {

// SPSA gains follow a_k = learning_rate / (k + 1)^lr_exponent and
// c_k = perturbation_scale / (k + 1)^perturbation_exponent.
struct VQEConfig {
  int iterations = 1000;
  int trials = 10;
  double learning_rate = 0.01;
  double perturbation_scale = 0.1;
  double lr_exponent = 0.0;
  double perturbation_exponent = 0.0;
  std::uint64_t seed = 0;
};

struct SpsaResult {
  std::vector<double> best;
  double best_value = 0.0;
  std::vector<double> trace;  // objective at each iterate, starting point first
};

using Objective = std::function<double(std::span<const double>)>;

// Minimizes `objective` from `initial`. Each step draws a Rademacher
// direction, estimates the gradient from two perturbed evaluations, and
// moves against it. Throws std::invalid_argument for an empty starting point
// or a bad config and NumericalError on a non-finite objective value.
SpsaResult spsa_minimize(const Objective& objective, std::vector<double> initial,
                         const VQEConfig& config, Rng& rng);

struct VQEResult {
  PLGCParams params;
  double energy = 0.0;
  StateVector state{1};
  int best_trial = -1;
  int failed_trials = 0;
};

// Best of `config.trials` SPSA runs from uniform angles in [0, 2 pi). Each
// trial is seeded from (config.seed, lattice dims, x, trial index). Throws
// NumericalError when every trial fails.
VQEResult vqe_ground_state(const LatticeGeometry& geometry, double x,
                           const VQEConfig& config);

void validate(const VQEConfig& config);

}  // namespace tqdl

#endif  // TQDL_VQE_H_
