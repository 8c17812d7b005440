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

#ifndef TQDL_QKMEANS_H_
#define TQDL_QKMEANS_H_

#include <array>
#include <span>
#include <vector>

#include "tqdl/state_vector.h"

namespace tqdl {

// Dense symmetric n x n matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

// F[i][j] = |<psi_i|psi_j>|^2. Throws std::invalid_argument if the states do
// not share a qubit count.
SquareMatrix fidelity_matrix(std::span<const StateVector* const> states);

// d = sqrt(2 (1 - F)) with F clamped into [0, 1] and an exact zero diagonal.
SquareMatrix hs_distance_matrix(const SquareMatrix& fidelity);

struct Clustering {
  std::vector<int> assignments;  // cluster id 0 or 1 per sample
  std::array<std::size_t, 2> medoids{};
  double loss = 0.0;  // sum of squared distances to the own medoid
  std::vector<double> loss_history;  // after each assignment step
  int lloyd_iterations = 0;
  bool refined = false;  // the medoid-pair search improved on the alternation
};

// Two-medoid clustering on squared distances. Starts from the farthest pair
// (smallest index pair on ties) and alternates nearest-medoid assignment
// (ties to cluster 0) with medoid updates (ties to the smallest index) until
// the assignment is stable. An exhaustive search over medoid pairs then
// replaces the result when it finds a strictly lower loss, so the returned
// loss is the global minimum. Throws std::invalid_argument for n < 2.
Clustering kmedoids_two(const SquareMatrix& distances);

struct OrientedLabels {
  std::vector<int> labels;  // -1 for the cluster holding the minimum-x sample
  bool degenerate = false;  // every sample landed in one cluster
};

OrientedLabels orient_clusters(const Clustering& clustering,
                               std::span<const double> xs);

}  // namespace tqdl

#endif  // TQDL_QKMEANS_H_
