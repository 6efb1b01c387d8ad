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

#include "upent/possibility.h"

#include <chrono>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace upent {
namespace {

absl::Status CheckCanonical(std::span<const double> sorted_pi) {
  if (sorted_pi.empty()) return absl::InvalidArgumentError("empty possibility");
  if (std::abs(sorted_pi[0] - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrCat("largest possibility degree must be 1, got ", sorted_pi[0]));
  }
  for (size_t i = 0; i < sorted_pi.size(); ++i) {
    if (!(sorted_pi[i] > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("degree ", i + 1, " is not positive"));
    }
    if (i > 0 && sorted_pi[i] > sorted_pi[i - 1]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "degrees not sorted descending at position ", i + 1));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<EnvelopeLine>> EnvelopeLines(
    std::span<const double> sorted_pi) {
  if (absl::Status s = CheckCanonical(sorted_pi); !s.ok()) return s;
  const int n = static_cast<int>(sorted_pi.size());
  std::vector<EnvelopeLine> lines;
  lines.reserve(n + 1);
  for (int j = 1; j <= n; ++j) lines.push_back({j, sorted_pi[j - 1], n - j + 1});
  lines.push_back({n + 1, 0.0, 0});
  return lines;
}

absl::StatusOr<HullBreakpoints> UpperHullBreakpoints(
    std::span<const double> sorted_pi) {
  if (absl::Status s = CheckCanonical(sorted_pi); !s.ok()) return s;
  const int n = static_cast<int>(sorted_pi.size());
  auto degree = [&](int j) { return j <= n ? sorted_pi[j - 1] : 0.0; };

  HullBreakpoints out;
  std::vector<DualPoint>& hull = out.hull;
  hull.reserve(n + 1);
  for (int j = 1; j <= n + 1; ++j) {
    const DualPoint b{static_cast<double>(j - n - 1), -degree(j), j};
    while (hull.size() >= 2) {
      const DualPoint& o = hull[hull.size() - 2];
      const DualPoint& a = hull.back();
      const double lhs = (a.x - o.x) * (b.y - o.y);
      const double rhs = (a.y - o.y) * (b.x - o.x);
      const double tol = 1e-14 * (std::abs(lhs) + std::abs(rhs));
      // Keep a only on a strict clockwise turn.
      if (lhs - rhs < -tol) break;
      hull.pop_back();
      ++out.stack_operations;
    }
    hull.push_back(b);
    ++out.stack_operations;
  }

  for (size_t i = hull.size() - 1; i >= 1; --i) {
    const int right = hull[i].idx;
    const int left = hull[i - 1].idx;
    out.breakpoints.push_back((degree(left) - degree(right)) / (right - left));
    out.suffix_starts.push_back(left);
  }
  return out;
}

std::vector<double> SortedSupport(const PossibilityDistribution& pi) {
  std::vector<double> sorted;
  sorted.reserve(pi.size());
  for (int i : pi.sorted_to_original()) {
    if (pi.pi()[i] > 0.0) sorted.push_back(pi.pi()[i]);
  }
  return sorted;
}

absl::StatusOr<EntropyResult> PossibilityUpperEntropy(
    const PossibilityDistribution& pi, HullBreakpoints* hull_out) {
  const auto start = std::chrono::steady_clock::now();
  const int n = pi.size();
  const std::vector<int>& order = pi.sorted_to_original();
  const std::vector<double> support = SortedSupport(pi);
  const int m = static_cast<int>(support.size());
  absl::StatusOr<HullBreakpoints> hull = UpperHullBreakpoints(support);
  if (!hull.ok()) return hull.status();

  EntropyResult result;
  result.method = Method::kHull;
  result.p.assign(n, 0.0);
  const size_t blocks = hull->breakpoints.size();
  const bool store_chain =
      static_cast<int64_t>(n) * static_cast<int64_t>(blocks + 1) <=
      kMaxStoredChainBits;
  NestedChain chain;
  SubsetMask current(store_chain ? n : 0);
  if (store_chain && m < n) {
    for (int k = m; k < n; ++k) current.Insert(order[k]);
    chain.sets.push_back(current);
    chain.breakpoints.push_back(0.0);
  }
  int end = m;  // exclusive end, 0-based sorted position
  for (size_t k = 0; k < blocks; ++k) {
    const int begin = hull->suffix_starts[k] - 1;
    const double value = hull->breakpoints[k];
    for (int pos = begin; pos < end; ++pos) {
      result.p[order[pos]] = value;
      if (store_chain) current.Insert(order[pos]);
    }
    if (store_chain) {
      chain.sets.push_back(current);
      chain.breakpoints.push_back(value);
    }
    end = begin;
  }
  result.entropy = Entropy(result.p);
  result.probes = hull->breakpoints;
  result.iterations = static_cast<int64_t>(hull->hull.size());
  if (store_chain) {
    result.chain = std::move(chain);
  } else {
    result.diagnostics = absl::StrCat("chain of ", blocks,
                                      " sets not stored; breakpoints in probes");
  }
  if (m < n) {
    if (!result.diagnostics.empty()) result.diagnostics += "; ";
    absl::StrAppend(&result.diagnostics, n - m,
                    " elements with zero possibility assigned p = 0");
  }
  if (hull_out != nullptr) *hull_out = *std::move(hull);
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace upent
