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

#ifndef UPENT_ENTROPY_H_
#define UPENT_ENTROPY_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "upent/subset.h"

namespace upent {

using ProbabilityVector = std::vector<double>;

// Shannon entropy in nats with 0 log 0 = 0.
double Entropy(std::span<const double> p);
inline double NatsToBits(double h) { return h / 0.69314718055994530942; }

// Nonnegative entries summing to 1 within tol.
absl::Status ValidateProbability(std::span<const double> p, double tol = 1e-9);

// Chain empty = S_0 < S_1 < ... < S_l = Omega (S_0 is implicit) together
// with the block densities (nu(S_j) - nu(S_{j-1})) / |S_j \ S_{j-1}|.
struct NestedChain {
  std::vector<SubsetMask> sets;
  std::vector<double> breakpoints;
};

// Strict nesting, last set full, nondecreasing breakpoints.
absl::Status ValidateChain(const NestedChain& chain, int n);

enum class Method { kAbellanMoral, kDecomposition, kMaxFlow, kHull, kNewton,
                    kFrankWolfe, kBruteForceChain };

std::string_view MethodName(Method m);
absl::StatusOr<Method> ParseMethod(std::string_view name);

struct EntropyResult {
  ProbabilityVector p;
  double entropy = 0.0;
  Method method = Method::kDecomposition;
  // Frank-Wolfe certificate: H* lies in [entropy, entropy + gap + slack].
  std::optional<double> gap;
  double slack = 0.0;
  std::optional<NestedChain> chain;
  // Intermediate parameter values probed by the solver (decomposition alphas,
  // Dinkelbach lambdas, the water level).
  std::vector<double> probes;
  int64_t iterations = 0;
  int64_t sfm_calls = 0;
  int64_t oracle_calls = 0;
  bool converged = true;
  std::string diagnostics;
  // Initial point or preprocessing; included in wall_time.
  std::chrono::duration<double> setup_time{0};
  std::chrono::duration<double> wall_time{0};
};

}  // namespace upent

#endif  // UPENT_ENTROPY_H_
