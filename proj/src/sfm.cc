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

#include "upent/sfm.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace upent {

absl::StatusOr<SfmResult> BruteForceMin(const CapacityOracle& nu,
                                        double tie_tol) {
  const int n = nu.size();
  if (n > ExplicitCapacity::kMaxSize) {
    return absl::InvalidArgumentError(
        absl::StrCat("brute-force SFM limited to n <= 20, got ", n));
  }
  const uint64_t count = uint64_t{1} << n;
  std::vector<double> values(count);
  double best = 0.0;
  for (uint64_t bits = 0; bits < count; ++bits) {
    values[bits] = nu.Eval(SubsetMask::FromBits(n, bits));
    if (bits == 0 || values[bits] < best) best = values[bits];
  }
  uint64_t union_bits = 0;
  uint64_t meet_bits = count - 1;
  for (uint64_t bits = 0; bits < count; ++bits) {
    if (values[bits] <= best + tie_tol) {
      union_bits |= bits;
      meet_bits &= bits;
    }
  }
  SfmResult r;
  r.min_value = best;
  r.maximal_minimizer = SubsetMask::FromBits(n, union_bits);
  r.minimal_minimizer = SubsetMask::FromBits(n, meet_bits);
  r.evaluations = static_cast<int64_t>(count);
  return r;
}

BaseVector GreedyBase(const CapacityOracle& nu, std::span<const int> order) {
  std::vector<double> chain = nu.ChainValues(order);
  BaseVector b;
  b.x.assign(nu.size(), 0.0);
  b.order.assign(order.begin(), order.end());
  for (size_t k = 0; k < order.size(); ++k) {
    b.x[order[k]] = chain[k + 1] - chain[k];
  }
  return b;
}

namespace {

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Greedy vertex minimizing <x, q> over B(nu): increasing x, ties by index.
BaseVector LinearMinimizer(const CapacityOracle& nu,
                           const std::vector<double>& x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] < x[b]; });
  return GreedyBase(nu, order);
}

// Affine minimizer of the corral: argmin ||Q a|| subject to sum a = 1.
Eigen::VectorXd AffineMinimizer(const std::vector<std::vector<double>>& corral) {
  const int m = static_cast<int>(corral.size());
  const int n = static_cast<int>(corral[0].size());
  Eigen::MatrixXd q(n, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) q(i, j) = corral[j][i];
  }
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
  kkt.topLeftCorner(m, m) = q.transpose() * q;
  kkt.block(0, m, m, 1).setOnes();
  kkt.block(m, 0, 1, m).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = 1.0;
  Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(m);
}

}  // namespace

MinNormResult MinNormPoint(const CapacityOracle& nu, double tol,
                           int max_major_cycles) {
  CountingOracle counted(nu);
  const int n = nu.size();
  if (max_major_cycles <= 0) max_major_cycles = 10 * n * n + 10;
  constexpr double kWeightEps = 1e-15;

  MinNormResult result;
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  BaseVector start = GreedyBase(counted, identity);
  std::vector<std::vector<double>> corral = {start.x};
  std::vector<double> weights = {1.0};
  std::vector<double> x = start.x;
  result.point = start;

  auto combine = [&]() {
    std::fill(x.begin(), x.end(), 0.0);
    for (size_t j = 0; j < corral.size(); ++j) {
      for (int i = 0; i < n; ++i) x[i] += weights[j] * corral[j][i];
    }
  };

  double best_norm = Dot(x, x);
  for (int major = 0; major < max_major_cycles; ++major) {
    result.major_cycles = major + 1;
    BaseVector q = LinearMinimizer(counted, x);
    const double xx = Dot(x, x);
    const double gap = xx - Dot(x, q.x);
    result.residual = std::sqrt(std::max(gap, 0.0));
    result.point.x = x;
    result.point.order = q.order;
    if (gap <= tol * tol || gap <= 1e-15 * std::max(1.0, xx)) {
      result.converged = true;
      break;
    }
    bool duplicate = false;
    for (const auto& v : corral) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d = std::max(d, std::abs(v[i] - q.x[i]));
      if (d <= 1e-14) duplicate = true;
    }
    if (duplicate) {
      // The linear oracle returned a corral vertex: x is optimal up to
      // rounding.
      result.converged = true;
      break;
    }
    corral.push_back(q.x);
    weights.push_back(0.0);

    for (int minor = 0; minor <= n + 1; ++minor) {
      Eigen::VectorXd alpha = AffineMinimizer(corral);
      const int m = static_cast<int>(corral.size());
      if (alpha.minCoeff() > kWeightEps) {
        for (int j = 0; j < m; ++j) weights[j] = alpha(j);
        combine();
        break;
      }
      double theta = 1.0;
      int leaving = -1;
      for (int j = 0; j < m; ++j) {
        if (alpha(j) <= kWeightEps) {
          const double denom = weights[j] - alpha(j);
          const double t = denom > 0.0 ? weights[j] / denom : 0.0;
          if (leaving < 0 || t < theta) {
            theta = t;
            leaving = j;
          }
        }
      }
      for (int j = 0; j < m; ++j) {
        weights[j] = (1.0 - theta) * weights[j] + theta * alpha(j);
      }
      weights[leaving] = 0.0;
      std::vector<std::vector<double>> kept;
      std::vector<double> kept_weights;
      double total = 0.0;
      for (int j = 0; j < m; ++j) {
        if (weights[j] > kWeightEps) {
          kept.push_back(std::move(corral[j]));
          kept_weights.push_back(weights[j]);
          total += weights[j];
        }
      }
      for (double& w : kept_weights) w /= total;
      corral = std::move(kept);
      weights = std::move(kept_weights);
      combine();
      if (corral.size() == 1) break;
    }
    const double norm = Dot(x, x);
    if (norm > best_norm + 1e-15) {
      // Rounding stalled the descent.
      result.point.x = x;
      result.converged = true;
      break;
    }
    best_norm = std::min(best_norm, norm);
    result.point.x = x;
  }
  result.evaluations = counted.count();
  return result;
}

namespace {

struct MinNormCandidates {
  SubsetMask maximal;
  SubsetMask minimal;
  double lower_bound = 0.0;
};

MinNormCandidates Threshold(const std::vector<double>& x, double eps) {
  const int n = static_cast<int>(x.size());
  MinNormCandidates c{SubsetMask(n), SubsetMask(n), 0.0};
  for (int i = 0; i < n; ++i) {
    if (x[i] <= eps) c.maximal.Insert(i);
    if (x[i] < -eps) c.minimal.Insert(i);
    c.lower_bound += std::min(x[i], 0.0);
  }
  return c;
}

// min nu over subsets of the minor [lower, upper], by min-norm-point, returned
// as the best of the two thresholded candidates mapped to global sets.
absl::StatusOr<std::pair<double, SubsetMask>> MinorMinimum(
    const CapacityOracle& nu, const SubsetMask& lower, const SubsetMask& upper,
    const SfmOptions& options) {
  MinorOracle minor(nu, lower, upper);
  if (minor.size() == 0) return std::make_pair(nu.Eval(lower), lower);
  MinNormResult mn =
      MinNormPoint(minor, options.min_norm_tol, options.max_major_cycles);
  if (!mn.converged) {
    return absl::ResourceExhaustedError(
        "min-norm-point did not converge in the repair step");
  }
  MinNormCandidates c = Threshold(mn.point.x, options.threshold);
  SubsetMask a = minor.ToGlobal(c.maximal);
  SubsetMask b = minor.ToGlobal(c.minimal);
  const double va = nu.Eval(a);
  const double vb = nu.Eval(b);
  return va <= vb ? std::make_pair(va, a) : std::make_pair(vb, b);
}

absl::StatusOr<SfmResult> MinNormSfm(const CapacityOracle& nu,
                                     const SfmOptions& options) {
  const int n = nu.size();
  MinNormResult mn =
      MinNormPoint(nu, options.min_norm_tol, options.max_major_cycles);
  if (!mn.converged) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "min-norm-point did not converge after ", mn.major_cycles,
        " major cycles (residual ", mn.residual, ")"));
  }
  MinNormCandidates c = Threshold(mn.point.x, options.threshold);
  const double v_max = nu.Eval(c.maximal);
  const double v_min = nu.Eval(c.minimal);
  const double lb = c.lower_bound;
  SfmResult r;
  r.min_value = std::min(v_max, v_min);
  r.maximal_minimizer = c.maximal;
  r.minimal_minimizer = c.minimal;
  const bool max_ok = v_max - lb <= options.verify_tol;
  const bool min_ok = v_min - lb <= options.verify_tol;
  if (max_ok && min_ok) {
    r.min_value = v_max;
    return r;
  }

  // Per-element repair: i lies in some minimizer iff the minimum over sets
  // containing i attains the global minimum; i lies in every minimizer iff
  // the minimum over sets avoiding i does not.
  const SubsetMask empty(n);
  const SubsetMask full = SubsetMask::Full(n);
  std::vector<double> with(n), without(n);
  double best = std::min({r.min_value, 0.0, nu.Eval(full)});
  for (int i = 0; i < n; ++i) {
    SubsetMask single(n);
    single.Insert(i);
    auto in = MinorMinimum(nu, single, full, options);
    if (!in.ok()) return in.status();
    SubsetMask rest = full;
    rest.Erase(i);
    auto out = MinorMinimum(nu, empty, rest, options);
    if (!out.ok()) return out.status();
    with[i] = in->first;
    without[i] = out->first;
    best = std::min({best, with[i], without[i]});
  }
  SubsetMask maximal(n), minimal(n);
  for (int i = 0; i < n; ++i) {
    if (with[i] <= best + options.verify_tol) maximal.Insert(i);
    if (without[i] > best + options.verify_tol) minimal.Insert(i);
  }
  r.maximal_minimizer = maximal;
  r.minimal_minimizer = minimal.Intersection(maximal);
  r.min_value = nu.Eval(maximal);
  return r;
}

}  // namespace

absl::StatusOr<SfmResult> SolveSfm(const CapacityOracle& nu,
                                   const SfmOptions& options) {
  CountingOracle counted(nu);
  SfmStrategy strategy = options.strategy;
  if (strategy == SfmStrategy::kAuto) {
    strategy = nu.size() <= options.brute_force_limit ? SfmStrategy::kBruteForce
                                                      : SfmStrategy::kMinNorm;
  }
  absl::StatusOr<SfmResult> r = strategy == SfmStrategy::kBruteForce
                                    ? BruteForceMin(counted, options.tie_tol)
                                    : MinNormSfm(counted, options);
  if (r.ok()) r->evaluations = counted.count();
  return r;
}

}  // namespace upent
