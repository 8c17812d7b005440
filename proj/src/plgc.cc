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

#include "tqdl/plgc.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tqdl {

namespace {

void check_length(const LatticeGeometry& geometry, std::size_t n) {
  if (n != geometry.num_plaquettes()) {
    throw std::invalid_argument("PLGC expects " +
                                std::to_string(geometry.num_plaquettes()) +
                                " angles, got " + std::to_string(n));
  }
}

}  // namespace

PLGCParams canonicalize(PLGCParams params) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (double& t : params.thetas) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
  }
  return params;
}

StateVector prepare_plgc(const LatticeGeometry& geometry,
                         const PLGCParams& params) {
  check_length(geometry, params.thetas.size());
  StateVector state(geometry.num_qubits);
  std::vector<Complex> next(state.dim());
  for (std::size_t p = 0; p < geometry.num_plaquettes(); ++p) {
    const double c = std::cos(params.thetas[p] / 2);
    const double s = std::sin(params.thetas[p] / 2);
    const std::uint64_t mask = geometry.plaquette_mask(p);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[i] = c * amps[i] + s * amps[i ^ mask];
    }
    std::copy(next.begin(), next.end(), amps.begin());
  }
  return state;
}

StateVector prepare_plgc_circuit(const LatticeGeometry& geometry,
                                 const PLGCParams& params) {
  check_length(geometry, params.thetas.size());
  StateVector state(geometry.num_qubits);
  for (std::size_t p = 0; p < geometry.num_plaquettes(); ++p) {
    const auto& edges = geometry.plaquettes[p];
    const std::size_t pivot = edges[3];
    apply_ry(state, pivot, params.thetas[p]);
    for (std::size_t k = 0; k < 3; ++k) apply_cnot(state, pivot, edges[k]);
  }
  return state;
}

LoopGasEvaluator::LoopGasEvaluator(const LatticeGeometry& geometry)
    : num_qubits_(geometry.num_qubits),
      num_plaquettes_(geometry.num_plaquettes()) {
  if (num_plaquettes_ > 20) {
    throw std::invalid_argument("too many plaquettes for subspace evaluation");
  }
  const std::size_t count = std::size_t{1} << num_plaquettes_;
  edge_masks_.resize(count);
  star_sum_.resize(count);
  z_sum_.resize(count);
  for (std::size_t subset = 0; subset < count; ++subset) {
    std::uint64_t m = 0;
    for (std::size_t p = 0; p < num_plaquettes_; ++p) {
      if ((subset >> p) & 1) m ^= geometry.plaquette_mask(p);
    }
    edge_masks_[subset] = m;
    double stars = 0.0;
    for (std::size_t s = 0; s < geometry.num_stars(); ++s) {
      stars += (std::popcount(m & geometry.star_mask(s)) & 1) ? -1.0 : 1.0;
    }
    star_sum_[subset] = stars;
    z_sum_[subset] = static_cast<double>(num_qubits_) - 2.0 * std::popcount(m);
  }
}

std::vector<double> LoopGasEvaluator::amplitudes(
    std::span<const double> thetas) const {
  if (thetas.size() != num_plaquettes_) {
    throw std::invalid_argument("LoopGasEvaluator: angle count mismatch");
  }
  std::vector<double> a(edge_masks_.size());
  a[0] = 1.0;
  std::size_t filled = 1;
  for (std::size_t p = 0; p < num_plaquettes_; ++p) {
    const double c = std::cos(thetas[p] / 2);
    const double s = std::sin(thetas[p] / 2);
    for (std::size_t i = 0; i < filled; ++i) {
      a[i + filled] = a[i] * s;
      a[i] *= c;
    }
    filled *= 2;
  }
  return a;
}

double LoopGasEvaluator::energy(std::span<const double> thetas,
                                double x) const {
  const auto a = amplitudes(thetas);
  double stars = 0.0, plaquettes = 0.0, field = 0.0;
  for (std::size_t subset = 0; subset < a.size(); ++subset) {
    const double w = a[subset] * a[subset];
    stars += w * star_sum_[subset];
    field += w * z_sum_[subset];
    for (std::size_t p = 0; p < num_plaquettes_; ++p) {
      plaquettes += a[subset ^ (std::size_t{1} << p)] * a[subset];
    }
  }
  return -(1.0 - x) * (stars + plaquettes) - x * field;
}

double LoopGasEvaluator::magnetization(std::span<const double> thetas) const {
  const auto a = amplitudes(thetas);
  double field = 0.0;
  for (std::size_t subset = 0; subset < a.size(); ++subset) {
    field += a[subset] * a[subset] * z_sum_[subset];
  }
  return field / static_cast<double>(num_qubits_);
}

}  // namespace tqdl
