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

#include "upent/entropy.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace upent {

double Entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

absl::Status ValidateProbability(std::span<const double> p, double tol) {
  double total = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("p[", i + 1, "] = ", p[i], " is negative"));
    }
    total += p[i];
  }
  if (std::abs(total - 1.0) > tol) {
    return absl::InvalidArgumentError(
        absl::StrCat("p sums to ", total, ", expected 1"));
  }
  return absl::OkStatus();
}

absl::Status ValidateChain(const NestedChain& chain, int n) {
  if (chain.sets.empty() || chain.sets.size() != chain.breakpoints.size()) {
    return absl::InvalidArgumentError("chain and breakpoints mismatch");
  }
  SubsetMask prev(n);
  for (size_t j = 0; j < chain.sets.size(); ++j) {
    const SubsetMask& s = chain.sets[j];
    if (!prev.IsSubsetOf(s) || prev == s) {
      return absl::InvalidArgumentError(
          absl::StrCat("chain is not strictly nested at position ", j));
    }
    if (j > 0 && chain.breakpoints[j] < chain.breakpoints[j - 1] - 1e-12) {
      return absl::InvalidArgumentError(
          absl::StrCat("breakpoints decrease at position ", j));
    }
    prev = s;
  }
  if (!prev.IsFull()) {
    return absl::InvalidArgumentError("chain does not end at Omega");
  }
  return absl::OkStatus();
}

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kAbellanMoral:
      return "am";
    case Method::kDecomposition:
      return "decomp";
    case Method::kMaxFlow:
      return "flow";
    case Method::kHull:
      return "hull";
    case Method::kNewton:
      return "newton";
    case Method::kFrankWolfe:
      return "fw";
    case Method::kBruteForceChain:
      return "brute";
  }
  return "unknown";
}

absl::StatusOr<Method> ParseMethod(std::string_view name) {
  for (Method m : {Method::kAbellanMoral, Method::kDecomposition,
                   Method::kMaxFlow, Method::kHull, Method::kNewton,
                   Method::kFrankWolfe, Method::kBruteForceChain}) {
    if (name == MethodName(m)) return m;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown method '", std::string(name), "'"));
}

}  // namespace upent
