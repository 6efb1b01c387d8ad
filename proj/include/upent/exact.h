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

#ifndef UPENT_EXACT_H_
#define UPENT_EXACT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/capacity.h"
#include "upent/entropy.h"
#include "upent/sfm.h"

namespace upent {

// Dinkelbach iterates for max_{B != empty} mu(B) / |B|.
struct DinkelbachTrace {
  std::vector<double> lambdas;
  std::vector<SubsetMask> witness_sets;
  double final_lambda = 0.0;
  SubsetMask final_maximal_argmax;
  int64_t sfm_calls = 0;
};

// Largest set of maximum density mu(B)/|B| for a supermodular mu with
// mu(Omega) > 0. Each iteration solves one SFM of lambda |B| - mu(B).
absl::StatusOr<DinkelbachTrace> DinkelbachMaxDensity(
    const CapacityOracle& mu, const SfmOptions& options = {});

// Abellan-Moral peeling: repeatedly assigns the density of the largest
// densest set to its elements and contracts it away.
absl::StatusOr<EntropyResult> AbellanMoral(const CapacityOracle& mu,
                                           const SfmOptions& options = {});

// Returns the maximal minimizer of nu(A) - alpha * b(A) among lower <= A <=
// upper.
using MaximalMinimizerFn = std::function<absl::StatusOr<SubsetMask>(
    double alpha, const SubsetMask& lower, const SubsetMask& upper)>;

struct DecompositionResult {
  NestedChain chain;
  // alpha values in the order the recursion probed them.
  std::vector<double> probes;
  int64_t sfm_calls = 0;
  std::string diagnostics;
};

// Chain of maximal minimizers of nu(A) - alpha b(A) over alpha >= 0 for a
// submodular nu and b > 0. Empty `b` means b = 1.
absl::StatusOr<DecompositionResult> DecompositionChain(
    const CapacityOracle& nu, std::span<const double> b = {},
    const SfmOptions& options = {});

// Same recursion with a caller-supplied minimizer (e.g. a min-cut).
absl::StatusOr<DecompositionResult> DecompositionChainWith(
    const CapacityOracle& nu, std::span<const double> b,
    const MaximalMinimizerFn& minimizer);

// x_i = b_i (nu(S_j) - nu(S_{j-1})) / b(S_j \ S_{j-1}) for i in block j.
ProbabilityVector ChainToDistribution(const NestedChain& chain,
                                      const CapacityOracle& nu,
                                      std::span<const double> b = {});

// Block densities of `sets` under nu, b = 1.
std::vector<double> BlockDensities(const std::vector<SubsetMask>& sets,
                                   const CapacityOracle& nu);

// Upper entropy of a 2-monotone lower probability by kAbellanMoral or
// kDecomposition (on the dual upper probability with b = 1).
absl::StatusOr<EntropyResult> UpperEntropyExact(const CapacityOracle& mu,
                                                Method method,
                                                const SfmOptions& options = {});

// Ground truth for n <= 7: the best feasible chain candidate over all ordered
// set partitions of Omega.
absl::StatusOr<EntropyResult> BruteForceChainOracle(const CapacityOracle& mu,
                                                    double feasibility_tol = 1e-10);

}  // namespace upent

#endif  // UPENT_EXACT_H_
