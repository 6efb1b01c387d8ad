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

#ifndef UPENT_SFM_H_
#define UPENT_SFM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/capacity.h"
#include "upent/subset.h"

namespace upent {

struct SfmResult {
  double min_value = 0.0;
  // Union of all minimizers; unique by the lattice property.
  SubsetMask maximal_minimizer;
  // Intersection of all minimizers.
  SubsetMask minimal_minimizer;
  int64_t evaluations = 0;
};

// A point of the base polyhedron B(nu) produced by the greedy rule.
struct BaseVector {
  std::vector<double> x;
  std::vector<int> order;
};

enum class SfmStrategy { kAuto, kBruteForce, kMinNorm };

struct SfmOptions {
  SfmStrategy strategy = SfmStrategy::kAuto;
  // kAuto uses brute force up to this size.
  int brute_force_limit = 14;
  // Values within tie_tol of the minimum count as minimizers (brute force).
  double tie_tol = 1e-12;
  // Bound on ||x - x*|| at which min-norm-point stops.
  double min_norm_tol = 1e-10;
  // Coordinates <= threshold form the maximal minimizer candidate.
  double threshold = 1e-9;
  double verify_tol = 1e-8;
  // 0 selects 10 n^2.
  int max_major_cycles = 0;
};

// Exhaustive scan of all 2^n subsets. n <= 20.
absl::StatusOr<SfmResult> BruteForceMin(const CapacityOracle& nu,
                                        double tie_tol = 1e-12);

// x_{order[k]} = nu(S_k) - nu(S_{k-1}) over the prefixes of `order`, which
// must be a permutation of 0..n-1. For submodular nu this is a vertex of
// B(nu) maximizing w^T x for any w sorted descending along `order`.
BaseVector GreedyBase(const CapacityOracle& nu, std::span<const int> order);

struct MinNormResult {
  BaseVector point;
  // sqrt(||x||^2 - min_{q in B} <x, q>), an upper bound on ||x - x*||.
  double residual = 0.0;
  int major_cycles = 0;
  int64_t evaluations = 0;
  bool converged = false;
};

// Fujishige-Wolfe minimum-norm point of B(nu), with the greedy rule as the
// linear oracle. On non-convergence the best iterate is returned with
// converged = false.
MinNormResult MinNormPoint(const CapacityOracle& nu, double tol = 1e-10,
                           int max_major_cycles = 0);

// Minimizes a submodular nu. Submodularity is not verified.
absl::StatusOr<SfmResult> SolveSfm(const CapacityOracle& nu,
                                   const SfmOptions& options = {});

}  // namespace upent

#endif  // UPENT_SFM_H_
