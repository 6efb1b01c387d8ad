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

#ifndef UPENT_DRIVER_H_
#define UPENT_DRIVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/entropy.h"
#include "upent/frank_wolfe.h"
#include "upent/generate.h"
#include "upent/instance.h"
#include "upent/possibility.h"
#include "upent/sfm.h"

namespace upent {

struct ComputeOptions {
  // Unset selects automatically.
  std::optional<Method> method;
  // Automatic selection uses decomp up to this n when no specialized solver
  // applies, fw above it.
  int decomp_threshold = 64;
  SfmOptions sfm;
  FwConfig fw;
  // Water-level tolerance on |f(x) - 1|.
  double epsilon = 1e-12;
  // Receives hull data when the hull solver runs.
  HullBreakpoints* hull_out = nullptr;
  FwTrace* fw_trace = nullptr;
};

bool Applicable(InstanceType type, Method method);
// Human-readable table of which methods accept which instance types.
std::string ApplicabilityMatrix();
Method AutoMethod(const Instance& inst, int decomp_threshold);

// Runs the selected solver. An inapplicable method is InvalidArgument.
absl::StatusOr<EntropyResult> Compute(const Instance& inst,
                                      const ComputeOptions& options = {});

struct CrosscheckReport {
  std::vector<EntropyResult> exact;
  std::optional<EntropyResult> frank_wolfe;
  // Over pairs of exact results.
  double max_p_difference = 0.0;
  double entropy_spread = 0.0;
  // Distance of the exact entropies from [H_a, H_a + gap + slack].
  double fw_bracket_violation = 0.0;
  bool within_tolerance = true;
  std::string notes;
};

// Every applicable exact method, brute force for n <= 7, and fw. Exact
// results are compared pairwise; fw is checked through its bracket.
absl::StatusOr<CrosscheckReport> Crosscheck(const Instance& inst, double tol,
                                            const ComputeOptions& options = {});

struct BenchSpec {
  std::vector<InstanceType> types;
  std::vector<int> sizes;
  std::vector<uint64_t> seeds;
  // Unset entries mean automatic selection.
  std::vector<std::optional<Method>> methods;
  // One cell per margin for intervals and per distortion for
  // distorted/explicit.
  std::vector<double> margins = {0.1};
  std::vector<Distortion> distortions = {Distortion::kSquare};
  int focal_sets = 8;
  int workers = 1;
  ComputeOptions compute;
};

struct BenchRecord {
  InstanceType type;
  int n;
  uint64_t seed;
  std::string params;
  std::string method;
  double entropy = 0.0;
  std::optional<double> gap;
  int64_t iterations = 0;
  int64_t oracle_calls = 0;
  double setup_s = 0.0;
  double solve_s = 0.0;
  std::string error;
};

// Cells in the order types x sizes x params x methods x seeds; inapplicable
// (type, method) pairs are skipped. Results do not depend on `workers`.
std::vector<BenchRecord> RunBench(const BenchSpec& spec);

// Header type,n,seed,params,method,entropy,gap,iterations,oracle_calls,
// setup_s,solve_s and one row per record.
std::string BenchCsv(const std::vector<BenchRecord>& records);
// Mean and sample standard deviation of setup_s and solve_s per cell over
// seeds.
std::string BenchSummary(const std::vector<BenchRecord>& records);

}  // namespace upent

#endif  // UPENT_DRIVER_H_
