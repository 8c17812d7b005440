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

#include "tqdl/lattice.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tqdl {

namespace {

std::uint64_t mask_of(const auto& edge_list, std::size_t num_qubits) {
  if (num_qubits > 64) {
    throw std::length_error("edge masks are limited to 64 qubits");
  }
  std::uint64_t m = 0;
  for (std::size_t e : edge_list) m |= std::uint64_t{1} << e;
  return m;
}

}  // namespace

std::uint64_t LatticeGeometry::star_mask(std::size_t s) const {
  return mask_of(stars.at(s), num_qubits);
}

std::uint64_t LatticeGeometry::plaquette_mask(std::size_t p) const {
  return mask_of(plaquettes.at(p), num_qubits);
}

LatticeGeometry build_lattice(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("lattice dimensions must be positive, got " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  if (rows * cols < 2) {
    throw std::invalid_argument("lattice needs at least two vertices");
  }
  LatticeGeometry g;
  g.rows = rows;
  g.cols = cols;
  const std::size_t num_horizontal = rows * (cols - 1);
  g.num_qubits = num_horizontal + cols * (rows - 1);
  g.edges.reserve(g.num_qubits);

  auto horizontal = [&](std::size_t r, std::size_t c) {
    return r * (cols - 1) + c;
  };
  auto vertical = [&](std::size_t r, std::size_t c) {
    return num_horizontal + r * cols + c;
  };

  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      g.edges.emplace_back(g.vertex_id(r, c), g.vertex_id(r, c + 1));
    }
  }
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      g.edges.emplace_back(g.vertex_id(r, c), g.vertex_id(r + 1, c));
    }
  }

  g.stars.assign(rows * cols, {});
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    g.stars[g.edges[e].first].push_back(e);
    g.stars[g.edges[e].second].push_back(e);
  }

  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      g.plaquettes.push_back({horizontal(r, c), vertical(r, c),
                              vertical(r, c + 1), horizontal(r + 1, c)});
    }
  }
  return g;
}

double effective_length(const LatticeGeometry& geometry) {
  if (geometry.num_plaquettes() == 0) {
    throw std::invalid_argument(
        "effective length is undefined for a lattice without plaquettes");
  }
  return std::sqrt(static_cast<double>(geometry.num_plaquettes()));
}

}  // namespace tqdl
