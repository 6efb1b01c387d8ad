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

#ifndef UPENT_TESTS_TEST_UTIL_H_
#define UPENT_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "upent/capacity.h"
#include "upent/models.h"
#include "upent/random.h"
#include "upent/subset.h"

namespace upent::testing {

// mu({1}) = 0.1, mu({2}) = mu({3}) = 0.4, mu({1,2}) = mu({1,3}) = 0.5,
// mu({2,3}) = 0.8.
inline ExplicitCapacity ThreeOutcomeCapacity() {
  return *ExplicitCapacity::Create(
      3, {0.0, 0.1, 0.4, 0.5, 0.4, 0.5, 0.8, 1.0});
}

// Uniform mass on {1,2}, {2,3}, {3,4}.
inline MassFunction ChainMass() {
  std::vector<SubsetMask> sets = {
      SubsetMask::FromElements(4, std::vector<int>{0, 1}),
      SubsetMask::FromElements(4, std::vector<int>{1, 2}),
      SubsetMask::FromElements(4, std::vector<int>{2, 3})};
  return *MassFunction::Create(4, std::move(sets), {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

inline PossibilityDistribution ThreeOutcomePossibility() {
  return *PossibilityDistribution::Create({1.0, 0.6, 0.3});
}

inline IntervalSet ThreeOutcomeIntervals() {
  return *IntervalSet::Create({0.1, 0.4, 0.2}, {0.4, 0.5, 0.6});
}

inline SubsetMask Set(int n, std::vector<int> one_based) {
  for (int& i : one_based) --i;
  return SubsetMask::FromElements(n, one_based);
}

inline double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? d : INFINITY;
}

inline std::vector<int> RandomOrder(int n, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.Below(static_cast<uint64_t>(i) + 1)]);
  }
  return order;
}

}  // namespace upent::testing

#endif  // UPENT_TESTS_TEST_UTIL_H_
