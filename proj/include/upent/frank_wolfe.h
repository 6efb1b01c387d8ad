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

#ifndef UPENT_FRANK_WOLFE_H_
#define UPENT_FRANK_WOLFE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/capacity.h"
#include "upent/entropy.h"

namespace upent {

struct FwConfig {
  // Stop once gap / (H + gap) <= rel_gap_tol.
  double rel_gap_tol = 1e-3;
  int64_t max_iter = 100000;
  double line_search_tol = 1e-12;
  // Set to optimize -sum p log(p + eps) instead of H.
  std::optional<double> surrogate_epsilon;
  double gamma_cap = 1.0 - 1e-12;
  // Start from the identity-order vertex instead of the interior point.
  // Surrogate mode only.
  bool fast_start = false;
  bool keep_iterates = false;
};

// Default surrogate eps: n * eps stays below 1e-12.
inline double DefaultSurrogateEpsilon(int n) { return 1e-12 / n; }

struct FwIteration {
  double entropy;
  double gap;
  double gamma;
};

struct FwTrace {
  std::vector<FwIteration> iterations;
  // Filled when FwConfig::keep_iterates is set; iterates[k] = p^k.
  std::vector<std::vector<double>> iterates;
};

// Average of the greedy vertices of B(upper) for the orders (i, rest
// ascending). Fails when some upper({i}) = 0.
absl::StatusOr<ProbabilityVector> InteriorPoint(const CapacityOracle& upper);

// Greedy vertex for the identity order; may contain zeros.
ProbabilityVector FastFeasiblePoint(const CapacityOracle& upper);

// argmax_{x in B(upper)} w^T x: greedy on w sorted descending, ties by index.
ProbabilityVector LinearOracle(const CapacityOracle& upper,
                               std::span<const double> w);

// argmax over gamma in [0, cap] of H((1 - gamma) p + gamma v), or of the
// surrogate when `surrogate_epsilon` is set, by bisection on the derivative.
double LineSearch(std::span<const double> p, std::span<const double> v,
                  std::optional<double> surrogate_epsilon, double cap,
                  double tol = 1e-12);

// Frank-Wolfe over the credal set of the lower probability `mu`. The result
// holds H(p^k) in `entropy`, the certificate gap, and `slack` = n eps in
// surrogate mode, so that H* lies in [entropy, entropy + gap + slack].
// Exhausting max_iter returns the last iterate with converged = false.
absl::StatusOr<EntropyResult> FwUpperEntropy(const CapacityOracle& mu,
                                             const FwConfig& config = {},
                                             FwTrace* trace = nullptr);

}  // namespace upent

#endif  // UPENT_FRANK_WOLFE_H_
