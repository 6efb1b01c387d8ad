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

#include "upent/frank_wolfe.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "upent/sfm.h"

namespace upent {
namespace {

// Gradient of H (without the constant -1, which vanishes on B) or of the
// surrogate.
void Gradient(std::span<const double> p, std::optional<double> eps,
              std::vector<double>& w) {
  w.resize(p.size());
  if (eps.has_value()) {
    const double e = *eps;
    for (size_t i = 0; i < p.size(); ++i) {
      w[i] = -std::log(p[i] + e) - p[i] / (p[i] + e);
    }
  } else {
    for (size_t i = 0; i < p.size(); ++i) w[i] = -std::log(p[i]);
  }
}

double Derivative(std::span<const double> p, std::span<const double> v,
                  std::optional<double> eps, double gamma) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double dir = v[i] - p[i];
    if (dir == 0.0) continue;
    const double q = p[i] + gamma * dir;
    const double g = eps.has_value() ? -std::log(q + *eps) - q / (q + *eps)
                                     : -std::log(q);
    s += g * dir;
  }
  return s;
}

}  // namespace

absl::StatusOr<ProbabilityVector> InteriorPoint(const CapacityOracle& upper) {
  const int n = upper.size();
  std::vector<int> impossible;
  for (int i = 0; i < n; ++i) {
    SubsetMask single(n);
    single.Insert(i);
    if (!(upper.Eval(single) > 0.0)) impossible.push_back(i + 1);
  }
  if (!impossible.empty()) {
    std::string list;
    for (int i : impossible) absl::StrAppend(&list, list.empty() ? "" : ",", i);
    return absl::FailedPreconditionError(absl::StrCat(
        "no interior point: upper probability is 0 on outcomes {", list, "}"));
  }
  ProbabilityVector p(n, 0.0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    order[0] = i;
    int k = 1;
    for (int j = 0; j < n; ++j) {
      if (j != i) order[k++] = j;
    }
    BaseVector v = GreedyBase(upper, order);
    for (int j = 0; j < n; ++j) p[j] += v.x[j];
  }
  for (double& x : p) x /= n;
  return p;
}

ProbabilityVector FastFeasiblePoint(const CapacityOracle& upper) {
  std::vector<int> order(upper.size());
  std::iota(order.begin(), order.end(), 0);
  return GreedyBase(upper, order).x;
}

ProbabilityVector LinearOracle(const CapacityOracle& upper,
                               std::span<const double> w) {
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] > w[b]; });
  return GreedyBase(upper, order).x;
}

double LineSearch(std::span<const double> p, std::span<const double> v,
                  std::optional<double> surrogate_epsilon, double cap,
                  double tol) {
  if (Derivative(p, v, surrogate_epsilon, 0.0) <= 0.0) return 0.0;
  if (Derivative(p, v, surrogate_epsilon, cap) >= 0.0) return cap;
  double lo = 0.0;
  double hi = cap;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (Derivative(p, v, surrogate_epsilon, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

absl::StatusOr<EntropyResult> FwUpperEntropy(const CapacityOracle& mu,
                                             const FwConfig& config,
                                             FwTrace* trace) {
  if (!(config.rel_gap_tol > 0.0 && config.rel_gap_tol < 1.0)) {
    return absl::InvalidArgumentError("rel_gap_tol must lie in (0, 1)");
  }
  if (config.surrogate_epsilon.has_value() && !(*config.surrogate_epsilon > 0.0)) {
    return absl::InvalidArgumentError("surrogate epsilon must be positive");
  }
  if (config.fast_start && !config.surrogate_epsilon.has_value()) {
    return absl::InvalidArgumentError(
        "the identity-order start may have zero coordinates; it needs "
        "surrogate mode");
  }
  const auto start = std::chrono::steady_clock::now();
  const int n = mu.size();
  DualOracle dual(mu);
  CountingOracle upper(dual);
  const std::optional<double> eps = config.surrogate_epsilon;

  ProbabilityVector p;
  if (config.fast_start) {
    p = FastFeasiblePoint(upper);
  } else {
    absl::StatusOr<ProbabilityVector> p0 = InteriorPoint(upper);
    if (!p0.ok()) return p0.status();
    p = *std::move(p0);
  }
  EntropyResult result;
  result.method = Method::kFrankWolfe;
  result.setup_time = std::chrono::steady_clock::now() - start;

  std::vector<double> w;
  double gamma = 0.0;
  double gap = 0.0;
  double h = Entropy(p);
  result.converged = false;
  int64_t k = 0;
  for (;; ++k) {
    if (trace != nullptr && config.keep_iterates) trace->iterates.push_back(p);
    Gradient(p, eps, w);
    const ProbabilityVector v = LinearOracle(upper, w);
    gap = 0.0;
    for (int i = 0; i < n; ++i) gap += w[i] * (v[i] - p[i]);
    gap = std::max(gap, 0.0);
    h = Entropy(p);
    if (trace != nullptr) trace->iterations.push_back({h, gap, gamma});
    if (h + gap <= 0.0 || gap / (h + gap) <= config.rel_gap_tol) {
      result.converged = true;
      break;
    }
    if (k >= config.max_iter) break;
    gamma = LineSearch(p, v, eps, config.gamma_cap, config.line_search_tol);
    if (gamma == 0.0) {
      // No ascent along the oracle direction: rounding floor reached.
      result.diagnostics = "line search returned 0 before the target gap";
      break;
    }
    for (int i = 0; i < n; ++i) p[i] = (1.0 - gamma) * p[i] + gamma * v[i];
  }
  result.p = std::move(p);
  result.entropy = h;
  result.gap = gap;
  result.slack = eps.has_value() ? n * *eps : 0.0;
  result.iterations = k;
  result.oracle_calls = upper.count();
  if (!result.converged && result.diagnostics.empty()) {
    result.diagnostics = absl::StrCat("max_iter ", config.max_iter,
                                      " reached, relative bound ",
                                      gap / (h + gap));
  }
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace upent
