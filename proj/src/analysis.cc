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

#include "tqdl/analysis.h"

#include <cmath>
#include <set>
#include <stdexcept>

namespace tqdl {

FlipIntervalEstimate flip_interval(std::span<const double> xs,
                                   std::span<const int> labels) {
  if (xs.size() != labels.size()) {
    throw std::invalid_argument("flip_interval: xs/labels length mismatch");
  }
  if (xs.size() < 2) throw std::domain_error("flip_interval: no transition");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (labels[i] != -1 && labels[i] != 1) {
      throw std::invalid_argument("flip_interval: labels must be -1 or +1");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("flip_interval: xs must be strictly ascending");
    }
  }
  const int first = labels.front();
  if (labels.back() == first) {
    throw std::domain_error("flip_interval: no transition (end labels agree)");
  }
  std::size_t j_min = 0;
  while (j_min + 1 < labels.size() && labels[j_min + 1] == first) ++j_min;
  std::size_t j_max = labels.size() - 1;
  while (j_max > 0 && labels[j_max - 1] == -first) --j_max;
  FlipIntervalEstimate e;
  e.x_lo = xs[j_min];
  e.x_hi = xs[j_max];
  e.center = (e.x_lo + e.x_hi) / 2;
  e.half_width = (e.x_hi - e.x_lo) / 2;
  return e;
}

std::size_t count_flips(std::span<const int> labels) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < labels.size(); ++i) n += labels[i] != labels[i - 1];
  return n;
}

ScalingFit fit_finite_size(std::span<const ScalingPoint> points, bool weighted) {
  if (points.size() < 2) throw std::invalid_argument("fit_finite_size: need >= 2 points");
  std::set<double> distinct;
  for (const auto& p : points) {
    if (!(p.plaquettes > 0.0)) throw std::invalid_argument("fit_finite_size: plaquettes must be positive");
    if (weighted && !(p.uncertainty > 0.0)) {
      throw std::invalid_argument("fit_finite_size: weighted fit needs positive uncertainties");
    }
    distinct.insert(p.plaquettes);
  }
  if (distinct.size() < 2) throw std::invalid_argument("fit_finite_size: degenerate abscissae");

  double sw = 0, sx = 0, sy = 0;
  for (const auto& p : points) {
    const double w = weighted ? 1.0 / (p.uncertainty * p.uncertainty) : 1.0;
    sw += w;
    sx += w / std::sqrt(p.plaquettes);
    sy += w * p.estimate;
  }
  const double xbar = sx / sw, ybar = sy / sw;
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    const double w = weighted ? 1.0 / (p.uncertainty * p.uncertainty) : 1.0;
    const double dx = 1.0 / std::sqrt(p.plaquettes) - xbar;
    sxx += w * dx * dx;
    sxy += w * dx * (p.estimate - ybar);
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.points.assign(points.begin(), points.end());
  const std::size_t n = points.size();
  if (n > 2) {
    double rss = 0;
    for (const auto& p : points) {
      const double w = weighted ? 1.0 / (p.uncertainty * p.uncertainty) : 1.0;
      const double r = p.estimate - fit.intercept - fit.slope / std::sqrt(p.plaquettes);
      rss += w * r * r;
    }
    const double s2 = rss / static_cast<double>(n - 2);
    fit.intercept_stderr = std::sqrt(s2 * (1.0 / sw + xbar * xbar / sxx));
  }
  return fit;
}

RepetitionSummary aggregate_repetitions(
    std::span<const FlipIntervalEstimate> estimates) {
  if (estimates.empty()) throw std::invalid_argument("aggregate_repetitions: empty list");
  RepetitionSummary s;
  for (const auto& e : estimates) {
    s.mean += e.center;
    s.mean_half_width += e.half_width;
  }
  const auto n = static_cast<double>(estimates.size());
  s.mean /= n;
  s.mean_half_width /= n;
  if (estimates.size() > 1) {
    double ss = 0;
    for (const auto& e : estimates) ss += (e.center - s.mean) * (e.center - s.mean);
    s.stddev = std::sqrt(ss / (n - 1));
  }
  return s;
}

}  // namespace tqdl
