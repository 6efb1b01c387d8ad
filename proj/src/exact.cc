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

#include "upent/exact.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace upent {

namespace {

double WeightOf(std::span<const double> b, const SubsetMask& a) {
  if (b.empty()) return a.Count();
  double w = 0.0;
  for (int i : a.Elements()) w += b[i];
  return w;
}

}  // namespace

absl::StatusOr<DinkelbachTrace> DinkelbachMaxDensity(
    const CapacityOracle& mu, const SfmOptions& options) {
  const int n = mu.size();
  const SubsetMask full = SubsetMask::Full(n);
  const double total = mu.Eval(full);
  if (!(total > 0.0)) {
    return absl::FailedPreconditionError(
        absl::StrCat("max-density search needs mu(Omega) > 0, got ", total));
  }
  const double eps = 1e-11 * std::max(1.0, std::abs(total));

  DinkelbachTrace trace;
  double lambda = 0.0;
  for (int t = 0; t <= n + 1; ++t) {
    ShiftedOracle objective(mu, -1.0, -lambda);
    absl::StatusOr<SfmResult> sfm = SolveSfm(objective, options);
    if (!sfm.ok()) return sfm.status();
    ++trace.sfm_calls;
    SubsetMask b = sfm->maximal_minimizer;
    if (b.Empty()) {
      // The empty set is excluded from the ratio; fall back to the best
      // singleton.
      double best = 0.0;
      int arg = 0;
      for (int i = 0; i < n; ++i) {
        SubsetMask s(n);
        s.Insert(i);
        const double v = mu.Eval(s);
        if (i == 0 || v > best) {
          best = v;
          arg = i;
        }
      }
      b.Insert(arg);
    }
    const double mu_b = mu.Eval(b);
    const double g = mu_b - lambda * b.Count();
    trace.lambdas.push_back(lambda);
    trace.witness_sets.push_back(b);
    const double next = mu_b / b.Count();
    if (g <= eps || next <= lambda) {
      trace.final_lambda = next;
      trace.final_maximal_argmax = b;
      return trace;
    }
    lambda = next;
  }
  return absl::InternalError(
      "Dinkelbach iteration exceeded n + 1 steps; mu is not supermodular");
}

absl::StatusOr<EntropyResult> AbellanMoral(const CapacityOracle& mu,
                                           const SfmOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CountingOracle counted(mu);
  const int n = mu.size();
  const SubsetMask full = SubsetMask::Full(n);
  constexpr double kZero = 1e-12;

  EntropyResult result;
  result.method = Method::kAbellanMoral;
  result.p.assign(n, 0.0);
  std::vector<SubsetMask> blocks;
  std::vector<double> levels;
  SubsetMask removed(n);
  while (!removed.IsFull()) {
    // Contraction of mu by everything peeled so far; contracting twice by
    // A then A' equals contracting once by A u A'.
    MinorOracle rest(counted, removed, full);
    const double remaining = rest.Eval(SubsetMask::Full(rest.size()));
    if (remaining <= kZero) {
      blocks.push_back(full.Minus(removed));
      levels.push_back(0.0);
      break;
    }
    absl::StatusOr<DinkelbachTrace> trace = DinkelbachMaxDensity(rest, options);
    if (!trace.ok()) return trace.status();
    result.sfm_calls += trace->sfm_calls;
    ++result.iterations;
    const SubsetMask& local = trace->final_maximal_argmax;
    const double density = rest.Eval(local) / local.Count();
    if (density < -kZero) {
      return absl::InvalidArgumentError(
          "negative probability assigned: input not 2-monotone or not a "
          "lower probability");
    }
    result.probes.push_back(density);
    SubsetMask block = rest.ToGlobal(local).Minus(removed);
    for (int i : block.Elements()) result.p[i] = std::max(density, 0.0);
    blocks.push_back(block);
    levels.push_back(density);
    removed = removed.Union(block);
  }

  // Blocks come out in decreasing density; the chain of the dual lists them
  // in increasing density.
  NestedChain chain;
  SubsetMask acc(n);
  for (size_t k = blocks.size(); k-- > 0;) {
    acc = acc.Union(blocks[k]);
    chain.sets.push_back(acc);
    chain.breakpoints.push_back(levels[k]);
  }
  result.chain = std::move(chain);
  result.entropy = Entropy(result.p);
  result.oracle_calls = counted.count();
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

namespace {

struct Recursion {
  const CapacityOracle& nu;
  std::span<const double> b;
  const MaximalMinimizerFn& minimizer;
  DecompositionResult& out;

  absl::Status Split(const SubsetMask& lo, const SubsetMask& hi) {
    const SubsetMask gap = hi.Minus(lo);
    if (gap.Count() <= 1) return absl::OkStatus();
    const double alpha = (nu.Eval(hi) - nu.Eval(lo)) / WeightOf(b, gap);
    out.probes.push_back(alpha);
    absl::StatusOr<SubsetMask> mid = minimizer(alpha, lo, hi);
    if (!mid.ok()) return mid.status();
    ++out.sfm_calls;
    SubsetMask clamped = mid->Union(lo).Intersection(hi);
    if (!(clamped == *mid)) {
      absl::StrAppend(&out.diagnostics, "clamped non-nested minimizer ",
                      mid->ToString(), " into [", lo.ToString(), ", ",
                      hi.ToString(), "]; ");
    }
    if (clamped == hi || clamped == lo) return absl::OkStatus();
    if (absl::Status s = Split(lo, clamped); !s.ok()) return s;
    out.chain.sets.push_back(clamped);
    return Split(clamped, hi);
  }
};

}  // namespace

absl::StatusOr<DecompositionResult> DecompositionChainWith(
    const CapacityOracle& nu, std::span<const double> b,
    const MaximalMinimizerFn& minimizer) {
  const int n = nu.size();
  DecompositionResult out;
  Recursion rec{nu, b, minimizer, out};
  const SubsetMask full = SubsetMask::Full(n);
  if (absl::Status s = rec.Split(SubsetMask(n), full); !s.ok()) return s;
  out.chain.sets.push_back(full);
  SubsetMask prev(n);
  for (const SubsetMask& s : out.chain.sets) {
    const SubsetMask block = s.Minus(prev);
    out.chain.breakpoints.push_back((nu.Eval(s) - nu.Eval(prev)) /
                                    WeightOf(b, block));
    prev = s;
  }
  return out;
}

absl::StatusOr<DecompositionResult> DecompositionChain(
    const CapacityOracle& nu, std::span<const double> b,
    const SfmOptions& options) {
  MaximalMinimizerFn sfm = [&](double alpha, const SubsetMask& lo,
                               const SubsetMask& hi) -> absl::StatusOr<SubsetMask> {
    // Minimizing over [lo, hi] only: the maximal minimizer at alpha lies in
    // this interval, so the restricted and global problems agree.
    MinorOracle minor(nu, lo, hi);
    std::vector<double> local_b;
    if (!b.empty()) {
      for (int g : minor.local_to_global()) local_b.push_back(b[g]);
    }
    ShiftedOracle objective(minor, 1.0, alpha, std::move(local_b));
    absl::StatusOr<SfmResult> r = SolveSfm(objective, options);
    if (!r.ok()) return r.status();
    return minor.ToGlobal(r->maximal_minimizer);
  };
  return DecompositionChainWith(nu, b, sfm);
}

ProbabilityVector ChainToDistribution(const NestedChain& chain,
                                      const CapacityOracle& nu,
                                      std::span<const double> b) {
  const int n = nu.size();
  ProbabilityVector x(n, 0.0);
  SubsetMask prev(n);
  double prev_value = 0.0;
  for (const SubsetMask& s : chain.sets) {
    const SubsetMask block = s.Minus(prev);
    const double value = nu.Eval(s);
    const double density = (value - prev_value) / WeightOf(b, block);
    for (int i : block.Elements()) x[i] = density * (b.empty() ? 1.0 : b[i]);
    prev = s;
    prev_value = value;
  }
  return x;
}

std::vector<double> BlockDensities(const std::vector<SubsetMask>& sets,
                                   const CapacityOracle& nu) {
  std::vector<double> out;
  if (sets.empty()) return out;
  SubsetMask prev(sets[0].universe_size());
  double prev_value = 0.0;
  for (const SubsetMask& s : sets) {
    const double value = nu.Eval(s);
    out.push_back((value - prev_value) / s.Minus(prev).Count());
    prev = s;
    prev_value = value;
  }
  return out;
}

absl::StatusOr<EntropyResult> UpperEntropyExact(const CapacityOracle& mu,
                                                Method method,
                                                const SfmOptions& options) {
  if (method == Method::kAbellanMoral) return AbellanMoral(mu, options);
  if (method != Method::kDecomposition) {
    return absl::InvalidArgumentError(absl::StrCat(
        "exact solver supports am and decomp, not ", std::string(MethodName(method))));
  }
  const auto start = std::chrono::steady_clock::now();
  CountingOracle counted(mu);
  DualOracle upper(counted);
  absl::StatusOr<DecompositionResult> dec =
      DecompositionChain(upper, {}, options);
  if (!dec.ok()) return dec.status();
  EntropyResult result;
  result.method = Method::kDecomposition;
  result.p = ChainToDistribution(dec->chain, upper);
  for (double x : result.p) {
    if (x < -1e-12) {
      return absl::InvalidArgumentError(
          "negative probability assigned: input not 2-monotone or not a "
          "lower probability");
    }
  }
  for (double& x : result.p) x = std::max(x, 0.0);
  result.entropy = Entropy(result.p);
  result.probes = std::move(dec->probes);
  result.sfm_calls = dec->sfm_calls;
  result.iterations = dec->sfm_calls;
  result.diagnostics = std::move(dec->diagnostics);
  result.chain = std::move(dec->chain);
  result.oracle_calls = counted.count();
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

namespace {

struct ChainSearch {
  int n;
  const std::vector<double>& upper;  // dual table, indexed by mask bits
  double tol;
  std::vector<uint64_t> sets;
  std::vector<double> p;
  std::vector<double> sums;
  double best_entropy = -1.0;
  std::vector<double> best_p;
  std::vector<uint64_t> best_sets;
  int64_t candidates = 0;

  void Evaluate() {
    ++candidates;
    uint64_t prev = 0;
    for (uint64_t s : sets) {
      const uint64_t block = s & ~prev;
      const double density = (upper[s] - upper[prev]) / std::popcount(block);
      if (density < -tol) return;
      for (int i = 0; i < n; ++i) {
        if (block >> i & 1) p[i] = density;
      }
      prev = s;
    }
    const uint64_t count = uint64_t{1} << n;
    for (uint64_t bits = 1; bits < count; ++bits) {
      sums[bits] = sums[bits & (bits - 1)] + p[std::countr_zero(bits)];
      if (sums[bits] > upper[bits] + tol) return;
    }
    const double h = Entropy(p);
    if (h > best_entropy) {
      best_entropy = h;
      best_p = p;
      best_sets = sets;
    }
  }

  void Extend(uint64_t current) {
    const uint64_t full = (uint64_t{1} << n) - 1;
    if (current == full) {
      Evaluate();
      return;
    }
    const uint64_t rest = full & ~current;
    for (uint64_t sub = rest; sub != 0; sub = (sub - 1) & rest) {
      sets.push_back(current | sub);
      Extend(current | sub);
      sets.pop_back();
    }
  }
};

}  // namespace

absl::StatusOr<EntropyResult> BruteForceChainOracle(const CapacityOracle& mu,
                                                    double feasibility_tol) {
  const auto start = std::chrono::steady_clock::now();
  const int n = mu.size();
  if (n > 7 || n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("brute-force chain oracle limited to 1 <= n <= 7, got ", n));
  }
  CountingOracle counted(mu);
  DualOracle dual(counted);
  const uint64_t count = uint64_t{1} << n;
  std::vector<double> upper(count);
  for (uint64_t bits = 0; bits < count; ++bits) {
    upper[bits] = dual.Eval(SubsetMask::FromBits(n, bits));
  }
  ChainSearch search{n, upper, feasibility_tol, {}, std::vector<double>(n),
                     std::vector<double>(count, 0.0), -1.0, {}, {}};
  search.Extend(0);
  if (search.best_entropy < 0.0) {
    return absl::InternalError("no feasible chain candidate");
  }
  EntropyResult result;
  result.method = Method::kBruteForceChain;
  result.p = search.best_p;
  for (double& x : result.p) x = std::max(x, 0.0);
  result.entropy = Entropy(result.p);
  NestedChain chain;
  for (uint64_t s : search.best_sets) chain.sets.push_back(SubsetMask::FromBits(n, s));
  chain.breakpoints = BlockDensities(chain.sets, dual);
  result.chain = std::move(chain);
  result.iterations = search.candidates;
  result.oracle_calls = counted.count();
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace upent
