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

#ifndef UPENT_GENERATE_H_
#define UPENT_GENERATE_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "upent/instance.h"
#include "upent/models.h"

namespace upent {

struct GenerateParams {
  // Intervals: sum l = 1 - margin, margin in (0, 1).
  double margin = 0.1;
  // Distorted and explicit.
  Distortion distortion = Distortion::kSquare;
  // Mass: number of distinct focal sets, capped at 2^n - 1.
  int focal_sets = 8;
};

// Dirichlet(1, ..., 1) p* under the distortion f.
absl::StatusOr<DistortedProbability> GenerateDistorted(int n, uint64_t seed,
                                                       Distortion f);

struct GeneratedIntervals {
  IntervalSet intervals;
  // Some rescaled l_i exceeded u_i and was clamped.
  bool clamped;
  int attempts;
};

// u_i ~ (0, 1] redrawn until sum u >= 1 (at most 1000 draws), l_i =
// u_i U[0, 1), then l rescaled to sum 1 - margin. n >= 2.
absl::StatusOr<GeneratedIntervals> GenerateIntervals(int n, uint64_t seed,
                                                     double margin);

// Uniform (0, 1] degrees sorted descending with the largest set to 1.
absl::StatusOr<PossibilityDistribution> GeneratePossibility(int n,
                                                            uint64_t seed);

// Distinct random focal sets (inclusion probability 1/2 per element,
// nonempty) with Dirichlet(1) masses.
absl::StatusOr<MassFunction> GenerateMass(int n, uint64_t seed, int focal_sets);

// Any type; the explicit type tabulates a distorted instance (n <= 20).
absl::StatusOr<Instance> Generate(InstanceType type, int n, uint64_t seed,
                                  const GenerateParams& params = {});

}  // namespace upent

#endif  // UPENT_GENERATE_H_
