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

#include "upent/intervals.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace upent {
namespace {

struct ClampEval {
  double f;
  int64_t right;
  int64_t left;
};

// Compensated sum of per-block partials; each block runs four independent
// lanes so the pass is not bound by one dependency chain.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void Add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

constexpr size_t kBlock = 256;

// One pass for f and both slope counts.
ClampEval Evaluate(double x, std::span<const double> l,
                   std::span<const double> u) {
  KahanSum total;
  int64_t right = 0;
  int64_t left = 0;
  const size_t n = l.size();
  for (size_t start = 0; start < n; start += kBlock) {
    const size_t end = std::min(n, start + kBlock);
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    size_t i = start;
    for (; i + 4 <= end; i += 4) {
      for (size_t k = 0; k < 4; ++k) {
        lane[k] += std::min(std::max(x, l[i + k]), u[i + k]);
        right += (l[i + k] <= x) & (x < u[i + k]);
        left += (l[i + k] < x) & (x <= u[i + k]);
      }
    }
    for (; i < end; ++i) {
      lane[0] += std::min(std::max(x, l[i]), u[i]);
      right += (l[i] <= x) & (x < u[i]);
      left += (l[i] < x) & (x <= u[i]);
    }
    total.Add((lane[0] + lane[1]) + (lane[2] + lane[3]));
  }
  return {total.sum, right, left};
}

// Same blocking as Evaluate.
double BlockedSum(std::span<const double> v) {
  KahanSum total;
  const size_t n = v.size();
  for (size_t start = 0; start < n; start += kBlock) {
    const size_t end = std::min(n, start + kBlock);
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    size_t i = start;
    for (; i + 4 <= end; i += 4) {
      for (size_t k = 0; k < 4; ++k) lane[k] += v[i + k];
    }
    for (; i < end; ++i) lane[0] += v[i];
    total.Add((lane[0] + lane[1]) + (lane[2] + lane[3]));
  }
  return total.sum;
}

}  // namespace

double ClampSum(double x, std::span<const double> lower,
                std::span<const double> upper) {
  return Evaluate(x, lower, upper).f;
}

int64_t SlopeCount(double x, std::span<const double> lower,
                   std::span<const double> upper, Side side) {
  int64_t count = 0;
  for (size_t i = 0; i < lower.size(); ++i) {
    count += side == Side::kRight ? (lower[i] <= x && x < upper[i])
                                  : (lower[i] < x && x <= upper[i]);
  }
  return count;
}

absl::StatusOr<WaterFillState> SolveWaterLevel(
    std::span<const double> lower, std::span<const double> upper, double eps,
    std::vector<WaterFillState>* trace) {
  if (lower.empty() || lower.size() != upper.size()) {
    return absl::InvalidArgumentError("interval bounds empty or mismatched");
  }
  if (!(eps > 0.0)) return absl::InvalidArgumentError("eps must be positive");
  WaterFillState s;
  s.a = *std::min_element(lower.begin(), lower.end());
  s.b = *std::max_element(upper.begin(), upper.end());
  const ClampEval ea = Evaluate(s.a, lower, upper);
  const double fb = ClampSum(s.b, lower, upper);
  if (ea.f > 1.0 + eps || fb < 1.0 - eps) {
    return absl::FailedPreconditionError(absl::StrCat(
        "empty credal set: sum l = ", ea.f, ", sum u = ", fb));
  }
  // First step is Newton from a when it lands inside the bracket.
  const double first =
      ea.right > 0 ? s.a + (1.0 - ea.f) / static_cast<double>(ea.right) : s.b;
  s.x = first > s.a && first < s.b ? first : 0.5 * (s.a + s.b);
  ClampEval e = Evaluate(s.x, lower, upper);
  while (std::abs(e.f - 1.0) > eps) {
    if (e.f < 1.0) {
      s.a = s.x;
      s.d = e.right;
    } else {
      s.b = s.x;
      s.d = e.left;
    }
    ++s.iterations;
    // Geometric midpoint while the bracket spans more than a factor of 4;
    // the root sits near 1/n, far below the initial b.
    const double mid =
        s.a > 0.0 && s.b > 4.0 * s.a ? std::sqrt(s.a * s.b) : 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      s.x = 0.5 * (s.a + s.b);
      s.bracket_collapsed = true;
      e = Evaluate(s.x, lower, upper);
      break;
    }
    const double next =
        s.d > 0 ? s.x - (e.f - 1.0) / static_cast<double>(s.d)
                : std::numeric_limits<double>::quiet_NaN();
    if (s.d > 0 && next > s.a && next < s.b) {
      s.x = next;
      s.step_kind = StepKind::kNewton;
      ++s.newton_steps;
    } else {
      s.x = mid;
      s.step_kind = StepKind::kBisection;
      ++s.bisection_steps;
    }
    e = Evaluate(s.x, lower, upper);
    if (trace != nullptr) {
      WaterFillState snapshot = s;
      snapshot.residual = e.f - 1.0;
      trace->push_back(snapshot);
    }
  }
  s.residual = e.f - 1.0;
  return s;
}

absl::StatusOr<EntropyResult> IntervalsUpperEntropy(const IntervalSet& iv,
                                                    double eps) {
  const auto start = std::chrono::steady_clock::now();
  const int n = iv.size();
  const std::vector<double>& l = iv.lower();
  const std::vector<double>& u = iv.upper();
  EntropyResult result;
  result.method = Method::kNewton;

  auto finish = [&](std::string note) {
    result.entropy = Entropy(result.p);
    const double drift = std::abs(BlockedSum(result.p) - 1.0);
    result.diagnostics = std::move(note);
    if (!result.diagnostics.empty()) result.diagnostics += "; ";
    absl::StrAppend(&result.diagnostics, "sum drift ", drift);
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
  };

  if (iv.lower_sum() >= 1.0 - eps) {
    result.p = l;
    return finish("sum l = 1: p = l");
  }
  if (iv.upper_sum() <= 1.0 + eps) {
    result.p = u;
    return finish("sum u = 1: p = u");
  }

  std::vector<double> support_l;
  std::vector<double> support_u;
  std::span<const double> sl = l;
  std::span<const double> su = u;
  const int64_t zeros = std::count(u.begin(), u.end(), 0.0);
  if (zeros > 0) {
    support_l.reserve(n - zeros);
    support_u.reserve(n - zeros);
    for (int i = 0; i < n; ++i) {
      if (u[i] > 0.0) {
        support_l.push_back(l[i]);
        support_u.push_back(u[i]);
      }
    }
    sl = support_l;
    su = support_u;
  }
  absl::StatusOr<WaterFillState> s = SolveWaterLevel(sl, su, eps);
  if (!s.ok()) return s.status();
  result.p.resize(n);
  for (int i = 0; i < n; ++i) result.p[i] = std::min(std::max(s->x, l[i]), u[i]);
  result.probes = {s->x};
  result.iterations = s->iterations;
  result.oracle_calls = s->iterations + 3;
  std::string note = absl::StrCat("water level ", s->x, "; ", s->newton_steps,
                                  " newton, ", s->bisection_steps, " bisection");
  if (zeros > 0) absl::StrAppend(&note, "; ", zeros, " elements with u = 0");
  if (s->bracket_collapsed) {
    result.converged = false;
    absl::StrAppend(&note, "; bracket collapsed at residual ", s->residual);
  }
  return finish(std::move(note));
}

bool KktCertificate(std::span<const double> p, const IntervalSet& iv,
                    double tol) {
  const int n = iv.size();
  if (static_cast<int>(p.size()) != n) return false;
  const std::vector<double>& l = iv.lower();
  const std::vector<double>& u = iv.upper();
  double sum = 0.0;
  for (double v : p) sum += v;
  if (std::abs(sum - 1.0) > tol) return false;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (p[i] < l[i] - tol || p[i] > u[i] + tol) return false;
    // A box narrower than 2 tol fixes p_i for every water level.
    if (u[i] - l[i] <= 2.0 * tol) continue;
    const bool at_lower = p[i] <= l[i] + tol;
    const bool at_upper = p[i] >= u[i] - tol;
    if (at_lower) {
      hi = std::min(hi, l[i] + tol);
    } else if (at_upper) {
      lo = std::max(lo, u[i] - tol);
    } else {
      lo = std::max(lo, p[i] - tol);
      hi = std::min(hi, p[i] + tol);
    }
  }
  return lo <= hi;
}

}  // namespace upent
