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

#ifndef TQDL_ANALYSIS_H_
#define TQDL_ANALYSIS_H_

#include <span>
#include <vector>

namespace tqdl {

struct FlipIntervalEstimate {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double center = 0.0;
  double half_width = 0.0;
};

// xs strictly ascending, labels in {-1, +1}. The interval runs from the end
// of the longest uniform prefix to the start of the longest suffix carrying
// the opposite label. Throws std::invalid_argument on bad input and
// std::domain_error when there is no transition.
FlipIntervalEstimate flip_interval(std::span<const double> xs,
                                   std::span<const int> labels);

// Number of adjacent label changes.
std::size_t count_flips(std::span<const int> labels);

struct ScalingPoint {
  double plaquettes = 0.0;
  double estimate = 0.0;
  double uncertainty = 0.0;  // only read by the weighted fit
};

struct ScalingFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_stderr = 0.0;
  std::vector<ScalingPoint> points;
};

// Least squares of estimate against 1/sqrt(plaquettes). With `weighted`,
// points carry weight 1/uncertainty^2. The stderr comes from the residual
// variance with n - 2 degrees of freedom (0 for two points).
ScalingFit fit_finite_size(std::span<const ScalingPoint> points,
                           bool weighted = false);

struct RepetitionSummary {
  double mean = 0.0;
  double stddev = 0.0;  // n - 1 normalization, 0 for a single estimate
  double mean_half_width = 0.0;
};

RepetitionSummary aggregate_repetitions(
    std::span<const FlipIntervalEstimate> estimates);

}  // namespace tqdl

#endif  // TQDL_ANALYSIS_H_
