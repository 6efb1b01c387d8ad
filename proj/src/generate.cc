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

#include "upent/generate.h"

#include <algorithm>
#include <functional>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "upent/random.h"

namespace upent {
namespace {

absl::Status CheckSize(int n) {
  if (n < 1) return absl::InvalidArgumentError(absl::StrCat("n must be >= 1, got ", n));
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<DistortedProbability> GenerateDistorted(int n, uint64_t seed,
                                                       Distortion f) {
  if (absl::Status s = CheckSize(n); !s.ok()) return s;
  Rng rng(seed);
  return DistortedProbability::Create(rng.FlatDirichlet(n), f);
}

absl::StatusOr<GeneratedIntervals> GenerateIntervals(int n, uint64_t seed,
                                                     double margin) {
  if (n < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("interval generator needs n >= 2, got ", n));
  }
  if (!(margin > 0.0 && margin < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("margin must lie in (0, 1), got ", margin));
  }
  Rng rng(seed);
  std::vector<double> u(n);
  int attempts = 0;
  double upper_sum = 0.0;
  while (upper_sum < 1.0) {
    if (++attempts > 1000) {
      return absl::ResourceExhaustedError(
          "sum u stayed below 1 after 1000 draws");
    }
    upper_sum = 0.0;
    for (double& x : u) {
      x = rng.UniformPositive();
      upper_sum += x;
    }
  }
  std::vector<double> l(n);
  double lower_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    l[i] = u[i] * rng.Uniform();
    lower_sum += l[i];
  }
  const double target = 1.0 - margin;
  if (lower_sum <= 0.0) {
    for (int i = 0; i < n; ++i) l[i] = u[i] * target / upper_sum;
  } else {
    const double scale = target / lower_sum;
    for (double& x : l) x *= scale;
  }
  // Move any excess over u_i onto the coordinates with room, in proportion
  // to their current l_i. Terminates because sum u > target.
  bool clamped = false;
  for (int round = 0; round < n; ++round) {
    double excess = 0.0;
    double free_mass = 0.0;
    for (int i = 0; i < n; ++i) {
      if (l[i] > u[i]) {
        excess += l[i] - u[i];
        l[i] = u[i];
      } else if (l[i] < u[i]) {
        free_mass += l[i];
      }
    }
    if (excess == 0.0) break;
    clamped = true;
    for (int i = 0; i < n; ++i) {
      if (l[i] < u[i]) {
        l[i] += free_mass > 0.0 ? excess * l[i] / free_mass : 0.0;
      }
    }
    if (free_mass <= 0.0) {
      // All room sits on zeros: spread by remaining capacity.
      double room = 0.0;
      for (int i = 0; i < n; ++i) room += u[i] - l[i];
      for (int i = 0; i < n; ++i) l[i] += excess * (u[i] - l[i]) / room;
    }
  }
  absl::StatusOr<IntervalSet> iv = IntervalSet::Create(std::move(l), std::move(u));
  if (!iv.ok()) return iv.status();
  return GeneratedIntervals{*std::move(iv), clamped, attempts};
}

absl::StatusOr<PossibilityDistribution> GeneratePossibility(int n,
                                                            uint64_t seed) {
  if (absl::Status s = CheckSize(n); !s.ok()) return s;
  Rng rng(seed);
  std::vector<double> pi(n);
  for (double& x : pi) x = rng.UniformPositive();
  std::sort(pi.begin(), pi.end(), std::greater<double>());
  pi[0] = 1.0;
  return PossibilityDistribution::Create(std::move(pi));
}

absl::StatusOr<MassFunction> GenerateMass(int n, uint64_t seed, int focal_sets) {
  if (absl::Status s = CheckSize(n); !s.ok()) return s;
  if (focal_sets < 1) {
    return absl::InvalidArgumentError("need at least one focal set");
  }
  if (n < 31) focal_sets = std::min<int64_t>(focal_sets, (int64_t{1} << n) - 1);
  Rng rng(seed);
  std::set<std::vector<int>> seen;
  std::vector<SubsetMask> sets;
  while (static_cast<int>(sets.size()) < focal_sets) {
    SubsetMask a(n);
    for (int i = 0; i < n; ++i) {
      if (rng.Next() >> 63) a.Insert(i);
    }
    if (a.Empty()) continue;
    if (!seen.insert(a.Elements()).second) continue;
    sets.push_back(std::move(a));
  }
  return MassFunction::Create(n, std::move(sets),
                              rng.FlatDirichlet(focal_sets));
}

absl::StatusOr<Instance> Generate(InstanceType type, int n, uint64_t seed,
                                  const GenerateParams& params) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  meta["seed"] = seed;
  Instance inst;
  switch (type) {
    case InstanceType::kMass: {
      absl::StatusOr<MassFunction> m = GenerateMass(n, seed, params.focal_sets);
      if (!m.ok()) return m.status();
      meta["focal_sets"] = m->focal_sets().size();
      inst = MakeInstance(*std::move(m));
      break;
    }
    case InstanceType::kPossibility: {
      absl::StatusOr<PossibilityDistribution> pi = GeneratePossibility(n, seed);
      if (!pi.ok()) return pi.status();
      inst = MakeInstance(*std::move(pi));
      break;
    }
    case InstanceType::kIntervals: {
      absl::StatusOr<GeneratedIntervals> g =
          GenerateIntervals(n, seed, params.margin);
      if (!g.ok()) return g.status();
      meta["margin"] = params.margin;
      meta["clamped"] = g->clamped;
      inst = MakeInstance(std::move(g->intervals));
      break;
    }
    case InstanceType::kDistorted:
    case InstanceType::kExplicit: {
      absl::StatusOr<DistortedProbability> d =
          GenerateDistorted(n, seed, params.distortion);
      if (!d.ok()) return d.status();
      meta["f"] = std::string(DistortionName(params.distortion));
      if (type == InstanceType::kDistorted) {
        inst = MakeInstance(*std::move(d));
        break;
      }
      if (n > ExplicitCapacity::kMaxSize) {
        return absl::InvalidArgumentError(
            absl::StrCat("explicit instances need n <= 20, got ", n));
      }
      absl::StatusOr<ExplicitCapacity> table =
          ExplicitCapacity::Materialize(DistortedOracle(*d));
      if (!table.ok()) return table.status();
      inst = MakeInstance(*std::move(table));
      break;
    }
  }
  inst.params = std::move(meta);
  return inst;
}

}  // namespace upent
