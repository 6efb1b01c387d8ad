// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UPENT_INTERVALS_H_
#define UPENT_INTERVALS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/entropy.h"
#include "upent/models.h"

namespace upent {

// f(x) = sum_i min(max(x, l_i), u_i), compensated summation.
double ClampSum(double x, std::span<const double> lower,
                std::span<const double> upper);
inline double ClampSum(double x, const IntervalSet& iv) {
  return ClampSum(x, iv.lower(), iv.upper());
}

enum class Side { kLeft, kRight };

// Right: |{i : l_i <= x < u_i}|. Left: |{i : l_i < x <= u_i}|.
int64_t SlopeCount(double x, std::span<const double> lower,
                   std::span<const double> upper, Side side);
inline int64_t SlopeCount(double x, const IntervalSet& iv, Side side) {
  return SlopeCount(x, iv.lower(), iv.upper(), side);
}

enum class StepKind { kNone, kNewton, kBisection };

struct WaterFillState {
  // f(a) <= 1 <= f(b).
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  // f(x) - 1 at the returned x.
  double residual = 0.0;
  // Slope count used by the last step.
  int64_t d = 0;
  StepKind step_kind = StepKind::kNone;
  int64_t iterations = 0;
  int64_t newton_steps = 0;
  int64_t bisection_steps = 0;
  // The bracket shrank to adjacent doubles before |f(x) - 1| <= eps; x is
  // then the bracket midpoint.
  bool bracket_collapsed = false;
};

// Hybrid Newton-bisection on f(x) = 1. Needs sum l < 1 < sum u and u > 0.
// `trace`, when set, receives the state after every iteration.
absl::StatusOr<WaterFillState> SolveWaterLevel(
    std::span<const double> lower, std::span<const double> upper,
    double eps = 1e-12, std::vector<WaterFillState>* trace = nullptr);

// Exact shortcuts (sum l = 1, sum u = 1, u_i = 0) first, then the water
// level; p_i = clamp of x. Sum drift is reported in diagnostics.
absl::StatusOr<EntropyResult> IntervalsUpperEntropy(const IntervalSet& iv,
                                                    double eps = 1e-12);

// True iff p sums to 1, lies in the boxes and admits a common water level x:
// interior p_i = x, p_i = l_i implies x <= l_i, p_i = u_i implies x >= u_i,
// each within tol.
bool KktCertificate(std::span<const double> p, const IntervalSet& iv,
                    double tol = 1e-9);

}  // namespace upent

#endif  // UPENT_INTERVALS_H_
