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

#ifndef TQDL_LATTICE_H_
#define TQDL_LATTICE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace tqdl {

// Open-boundary square lattice with qubits on the edges.
//
// `rows` x `cols` counts vertices. Edges are numbered with all horizontal
// edges first (row-major), then all vertical edges (row-major). Plaquettes
// are numbered in raster order over faces, and each lists its bounding edges
// as (top, left, right, bottom).
struct LatticeGeometry {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t num_qubits = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // vertex ids
  std::vector<std::vector<std::size_t>> stars;             // per vertex
  std::vector<std::array<std::size_t, 4>> plaquettes;      // per face

  std::size_t num_stars() const { return stars.size(); }
  std::size_t num_plaquettes() const { return plaquettes.size(); }
  std::size_t vertex_id(std::size_t r, std::size_t c) const {
    return r * cols + c;
  }

  // Bit mask over qubits for a star / plaquette. Requires num_qubits <= 64.
  std::uint64_t star_mask(std::size_t s) const;
  std::uint64_t plaquette_mask(std::size_t p) const;
};

// Throws std::invalid_argument for a zero dimension or a single vertex.
LatticeGeometry build_lattice(std::size_t rows, std::size_t cols);

// sqrt(number of plaquettes); throws std::invalid_argument when there are none.
double effective_length(const LatticeGeometry& geometry);

}  // namespace tqdl

#endif  // TQDL_LATTICE_H_
