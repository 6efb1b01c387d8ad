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

#ifndef UPENT_POSSIBILITY_H_
#define UPENT_POSSIBILITY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/entropy.h"
#include "upent/models.h"

namespace upent {

// g_j(alpha) = intercept - slope_count * alpha, the value of Pi(A) - alpha |A|
// on the suffix A = {j, ..., n} of the descending order. j = n + 1 is the
// empty set.
struct EnvelopeLine {
  int j;
  double intercept;
  int slope_count;
  double At(double alpha) const { return intercept - slope_count * alpha; }
};

// Lines for j = 1..n+1. `sorted_pi` must be descending with pi_1 = 1 and all
// entries positive.
absl::StatusOr<std::vector<EnvelopeLine>> EnvelopeLines(
    std::span<const double> sorted_pi);

// Dual point (j - n - 1, -pi_j) of line g_j.
struct DualPoint {
  double x;
  double y;
  int idx;
};

struct HullBreakpoints {
  // Strictly increasing.
  std::vector<double> breakpoints;
  // 1-based j with chain set {j, ..., n} (descending order), one per
  // breakpoint; strictly decreasing.
  std::vector<int> suffix_starts;
  // Upper hull vertices, left to right; the last one is (0, 0).
  std::vector<DualPoint> hull;
  // Pushes plus pops of the monotone-chain pass; at most 2(n + 1).
  int64_t stack_operations = 0;
};

// One monotone-chain pass over the dual points. Collinear points are dropped
// so each suffix start is the smallest j attaining the envelope.
absl::StatusOr<HullBreakpoints> UpperHullBreakpoints(
    std::span<const double> sorted_pi);

// Positive degrees of `pi` in descending order.
std::vector<double> SortedSupport(const PossibilityDistribution& pi);

// Chain sets are stored in the result only when n * (chain length) is at
// most this many bits.
inline constexpr int64_t kMaxStoredChainBits = int64_t{1} << 26;

// Maximum-entropy member of the credal set of the necessity measure.
// Elements with pi_i = 0 receive p_i = 0; the rest is solved on the support.
absl::StatusOr<EntropyResult> PossibilityUpperEntropy(
    const PossibilityDistribution& pi, HullBreakpoints* hull_out = nullptr);

}  // namespace upent

#endif  // UPENT_POSSIBILITY_H_
