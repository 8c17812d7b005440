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

#include "tqdl/qkmeans.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tqdl {

namespace {

double pair_loss(const SquareMatrix& d2, std::size_t a, std::size_t b) {
  double loss = 0.0;
  for (std::size_t i = 0; i < d2.n; ++i) loss += std::min(d2(i, a), d2(i, b));
  return loss;
}

// Assigns to the nearer medoid, ties to cluster 0; returns the loss.
double assign(const SquareMatrix& d2, const std::array<std::size_t, 2>& medoids,
              std::vector<int>& out) {
  double loss = 0.0;
  for (std::size_t i = 0; i < d2.n; ++i) {
    const double d0 = d2(i, medoids[0]), d1 = d2(i, medoids[1]);
    out[i] = d1 < d0 ? 1 : 0;
    loss += std::min(d0, d1);
  }
  return loss;
}

}  // namespace

SquareMatrix fidelity_matrix(std::span<const StateVector* const> states) {
  SquareMatrix f{states.size(), std::vector<double>(states.size() * states.size())};
  for (std::size_t i = 0; i < states.size(); ++i) {
    f(i, i) = 1.0;
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const double v = std::norm(inner_product(*states[i], *states[j]));
      f(i, j) = v;
      f(j, i) = v;
    }
  }
  return f;
}

SquareMatrix hs_distance_matrix(const SquareMatrix& fidelity) {
  SquareMatrix d{fidelity.n, std::vector<double>(fidelity.values.size())};
  for (std::size_t i = 0; i < d.n; ++i) {
    for (std::size_t j = 0; j < d.n; ++j) {
      if (i == j) continue;
      const double f = std::clamp(fidelity(i, j), 0.0, 1.0);
      d(i, j) = std::sqrt(2.0 * (1.0 - f));
    }
  }
  return d;
}

Clustering kmedoids_two(const SquareMatrix& distances) {
  const std::size_t n = distances.n;
  if (n < 2) throw std::invalid_argument("kmedoids_two: need at least 2 samples");
  if (distances.values.size() != n * n) {
    throw std::invalid_argument("kmedoids_two: matrix size mismatch");
  }
  SquareMatrix d2 = distances;
  for (double& v : d2.values) v *= v;

  Clustering c;
  c.medoids = {0, 1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distances(i, j) > distances(c.medoids[0], c.medoids[1])) c.medoids = {i, j};
    }
  }

  std::vector<int> next(n);
  c.assignments.assign(n, -1);
  while (true) {
    const double loss = assign(d2, c.medoids, next);
    if (next == c.assignments) break;
    c.assignments = next;
    c.loss_history.push_back(loss);
    ++c.lloyd_iterations;
    for (int k = 0; k < 2; ++k) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (c.assignments[i] != k) continue;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (c.assignments[j] == k) s += d2(i, j);
        }
        if (s < best) {
          best = s;
          c.medoids[static_cast<std::size_t>(k)] = i;
        }
      }
    }
  }
  c.loss = assign(d2, c.medoids, c.assignments);

  std::array<std::size_t, 2> best_pair = c.medoids;
  double best_loss = c.loss;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double l = pair_loss(d2, a, b);
      if (l < best_loss) {
        best_loss = l;
        best_pair = {a, b};
      }
    }
  }
  if (best_loss < c.loss) {
    c.refined = true;
    c.medoids = best_pair;
    c.loss = assign(d2, c.medoids, c.assignments);
    c.loss_history.push_back(c.loss);
  }
  return c;
}

OrientedLabels orient_clusters(const Clustering& clustering,
                               std::span<const double> xs) {
  const std::size_t n = clustering.assignments.size();
  if (xs.size() != n) throw std::invalid_argument("orient_clusters: length mismatch");
  OrientedLabels out;
  out.labels.assign(n, -1);
  if (n == 0) return out;
  const auto low = static_cast<std::size_t>(
      std::min_element(xs.begin(), xs.end()) - xs.begin());
  const int topo = clustering.assignments[low];
  bool mixed = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (clustering.assignments[i] != topo) {
      out.labels[i] = 1;
      mixed = true;
    }
  }
  out.degenerate = !mixed;
  return out;
}

}  // namespace tqdl
