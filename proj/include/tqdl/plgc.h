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

#ifndef TQDL_PLGC_H_
#define TQDL_PLGC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "tqdl/lattice.h"
#include "tqdl/state_vector.h"

namespace tqdl {

// One rotation angle per plaquette, in raster order.
struct PLGCParams {
  std::vector<double> thetas;

  friend bool operator==(const PLGCParams&, const PLGCParams&) = default;
};

// Reduces every angle into [0, 2 pi).
PLGCParams canonicalize(PLGCParams params);

// prod_p [cos(theta_p / 2) I + sin(theta_p / 2) B_p] |0...0>, with B_p the
// X string on the edges of plaquette p. Throws std::invalid_argument on a
// length mismatch.
StateVector prepare_plgc(const LatticeGeometry& geometry,
                         const PLGCParams& params);

// Same state built from Ry and CNOT gates: for each plaquette, Ry(theta_p) on
// its bottom edge (still |0> at that point in raster order) fanned out by
// CNOTs onto the other three edges.
StateVector prepare_plgc_circuit(const LatticeGeometry& geometry,
                                 const PLGCParams& params);

// Evaluates PLGC states inside the loop-gas subspace. The state is supported
// on the 2^p configurations reached by flipping plaquette subsets, so energy
// and magnetization reduce to sums over subsets instead of 2^N amplitudes.
class LoopGasEvaluator {
 public:
  explicit LoopGasEvaluator(const LatticeGeometry& geometry);

  std::size_t num_plaquettes() const { return num_plaquettes_; }
  std::size_t num_configurations() const { return edge_masks_.size(); }
  // Edge mask of each plaquette subset, indexed by the subset bit mask.
  std::span<const std::uint64_t> edge_masks() const { return edge_masks_; }

  // Real amplitude of each plaquette subset.
  std::vector<double> amplitudes(std::span<const double> thetas) const;

  double energy(std::span<const double> thetas, double x) const;
  double magnetization(std::span<const double> thetas) const;

 private:
  std::size_t num_qubits_;
  std::size_t num_plaquettes_;
  std::vector<std::uint64_t> edge_masks_;
  std::vector<double> star_sum_;  // sum_s A_s eigenvalue per configuration
  std::vector<double> z_sum_;     // sum_i Z_i eigenvalue per configuration
};

}  // namespace tqdl

#endif  // TQDL_PLGC_H_
