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

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "gtest/gtest.h"

namespace tqdl {
namespace {

TEST(Lattice, PaperSizes) {
  const std::pair<std::size_t, std::size_t> dims[] = {{2, 2}, {2, 3}, {3, 3}, {4, 3}};
  const std::size_t qubits[] = {4, 7, 12, 17};
  const std::size_t plaqs[] = {1, 2, 4, 6};
  for (int i = 0; i < 4; ++i) {
    const auto g = build_lattice(dims[i].first, dims[i].second);
    EXPECT_EQ(g.num_qubits, qubits[i]);
    EXPECT_EQ(g.num_plaquettes(), plaqs[i]);
    EXPECT_EQ(g.num_stars(), dims[i].first * dims[i].second);
  }
}

TEST(Lattice, SingleEdge) {
  const auto g = build_lattice(1, 2);
  EXPECT_EQ(g.num_qubits, 1u);
  EXPECT_EQ(g.num_plaquettes(), 0u);
  EXPECT_EQ(g.num_stars(), 2u);
  EXPECT_THROW(effective_length(g), std::invalid_argument);
}

TEST(Lattice, RejectsDegenerate) {
  EXPECT_THROW(build_lattice(0, 3), std::invalid_argument);
  EXPECT_THROW(build_lattice(3, 0), std::invalid_argument);
  EXPECT_THROW(build_lattice(1, 1), std::invalid_argument);
}

TEST(Lattice, EffectiveLength) {
  EXPECT_DOUBLE_EQ(effective_length(build_lattice(2, 2)), 1.0);
  EXPECT_DOUBLE_EQ(effective_length(build_lattice(3, 3)), 2.0);
  EXPECT_NEAR(effective_length(build_lattice(4, 3)), 2.449489742783178, 1e-15);
}

TEST(Lattice, EdgeOrder) {
  // 2x3 vertices: 4 horizontal edges then 3 vertical edges.
  const auto g = build_lattice(2, 3);
  EXPECT_EQ(g.edges[0], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(g.edges[3], (std::pair<std::size_t, std::size_t>{4, 5}));
  EXPECT_EQ(g.edges[4], (std::pair<std::size_t, std::size_t>{0, 3}));
  EXPECT_EQ(g.edges[6], (std::pair<std::size_t, std::size_t>{2, 5}));
  // Plaquette 0: top 0, left 4, right 5, bottom 2.
  EXPECT_EQ(g.plaquettes[0], (std::array<std::size_t, 4>{0, 4, 5, 2}));
  EXPECT_EQ(g.plaquettes[1], (std::array<std::size_t, 4>{1, 5, 6, 3}));
}

TEST(Lattice, CountsAndIncidenceProperties) {
  for (std::size_t r = 1; r <= 6; ++r) {
    for (std::size_t c = 1; c <= 6; ++c) {
      if (r * c < 2) continue;
      const auto g = build_lattice(r, c);
      ASSERT_EQ(g.num_qubits, r * (c - 1) + c * (r - 1));
      ASSERT_EQ(g.num_plaquettes(), (r - 1) * (c - 1));
      ASSERT_EQ(g.num_stars(), r * c);

      std::vector<int> in_stars(g.num_qubits), in_plaqs(g.num_qubits);
      for (const auto& s : g.stars) {
        EXPECT_GE(s.size(), 1u);
        EXPECT_LE(s.size(), 4u);
        for (std::size_t e : s) ++in_stars[e];
      }
      for (const auto& p : g.plaquettes) {
        EXPECT_EQ(std::set<std::size_t>(p.begin(), p.end()).size(), 4u);
        for (std::size_t e : p) ++in_plaqs[e];
      }
      for (std::size_t e = 0; e < g.num_qubits; ++e) {
        EXPECT_EQ(in_stars[e], 2);
        EXPECT_LE(in_plaqs[e], 2);
      }
      for (std::size_t s = 0; s < g.num_stars(); ++s) {
        for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
          const int overlap = std::popcount(g.star_mask(s) & g.plaquette_mask(p));
          EXPECT_TRUE(overlap == 0 || overlap == 2);
        }
      }
    }
  }
}

TEST(Lattice, StarSizesUnderOpenBoundaries) {
  const auto g = build_lattice(3, 3);
  EXPECT_EQ(g.stars[g.vertex_id(0, 0)].size(), 2u);
  EXPECT_EQ(g.stars[g.vertex_id(0, 1)].size(), 3u);
  EXPECT_EQ(g.stars[g.vertex_id(1, 1)].size(), 4u);
}

TEST(Lattice, LoopMapIsInjective) {
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}, {4, 3}, {3, 4}}) {
    const auto g = build_lattice(r, c);
    const std::size_t p = g.num_plaquettes();
    std::set<std::uint64_t> seen;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << p); ++subset) {
      std::uint64_t edges = 0;
      for (std::size_t k = 0; k < p; ++k) {
        if (subset >> k & 1) edges ^= g.plaquette_mask(k);
      }
      EXPECT_TRUE(seen.insert(edges).second);
    }
  }
}

}  // namespace
}  // namespace tqdl
