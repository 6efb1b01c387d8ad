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

#include "upent/capacity.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace upent {

std::vector<double> CapacityOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<double> out;
  out.reserve(order.size() + 1);
  SubsetMask s(size());
  out.push_back(Eval(s));
  for (int i : order) {
    s.Insert(i);
    out.push_back(Eval(s));
  }
  return out;
}

absl::StatusOr<ExplicitCapacity> ExplicitCapacity::Create(
    int n, std::vector<double> values) {
  if (n < 0 || n > kMaxSize) {
    return absl::InvalidArgumentError(absl::StrCat(
        "explicit capacity limited to n <= ", kMaxSize, ", got ", n));
  }
  if (values.size() != (size_t{1} << n)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", size_t{1} << n, " values, got ",
                     values.size()));
  }
  if (values[0] != 0.0) {
    return absl::InvalidArgumentError("value of the empty set must be 0");
  }
  return ExplicitCapacity(n, std::move(values));
}

absl::StatusOr<ExplicitCapacity> ExplicitCapacity::Materialize(
    const CapacityOracle& oracle) {
  const int n = oracle.size();
  if (n > kMaxSize) {
    return absl::InvalidArgumentError(
        absl::StrCat("instance too large to materialize: n = ", n));
  }
  std::vector<double> values(size_t{1} << n);
  for (uint64_t bits = 0; bits < values.size(); ++bits) {
    values[bits] = oracle.Eval(SubsetMask::FromBits(n, bits));
  }
  values[0] = 0.0;
  return ExplicitCapacity(n, std::move(values));
}

DualOracle::DualOracle(const CapacityOracle& inner)
    : inner_(inner), total_(inner.Eval(SubsetMask::Full(inner.size()))) {}

double DualOracle::Eval(const SubsetMask& a) const {
  if (a.Empty()) return 0.0;
  return total_ - inner_.Eval(a.Complement());
}

std::vector<double> DualOracle::ChainValues(std::span<const int> order) const {
  const int n = size();
  const int k = static_cast<int>(order.size());
  // Complements of the prefixes of `order` are the prefixes of
  // (rest, reversed order) of length n - i.
  std::vector<char> in_order(n, 0);
  for (int i : order) in_order[i] = 1;
  std::vector<int> reversed;
  reversed.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!in_order[i]) reversed.push_back(i);
  }
  for (int j = k - 1; j >= 0; --j) reversed.push_back(order[j]);
  std::vector<double> inner = inner_.ChainValues(reversed);
  std::vector<double> out(k + 1);
  out[0] = 0.0;
  for (int i = 1; i <= k; ++i) out[i] = total_ - inner[n - i];
  return out;
}

ShiftedOracle::ShiftedOracle(const CapacityOracle& inner, double scale,
                             double alpha, std::vector<double> weights)
    : inner_(inner), scale_(scale), alpha_(alpha), weights_(std::move(weights)) {}

double ShiftedOracle::Eval(const SubsetMask& a) const {
  double w = 0.0;
  if (weights_.empty()) {
    w = a.Count();
  } else {
    for (int i : a.Elements()) w += weights_[i];
  }
  return scale_ * inner_.Eval(a) - alpha_ * w;
}

std::vector<double> ShiftedOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<double> out = inner_.ChainValues(order);
  double w = 0.0;
  out[0] *= scale_;
  for (size_t k = 0; k < order.size(); ++k) {
    w += Weight(order[k]);
    out[k + 1] = scale_ * out[k + 1] - alpha_ * w;
  }
  return out;
}

MinorOracle::MinorOracle(const CapacityOracle& inner, const SubsetMask& lower,
                         const SubsetMask& upper)
    : inner_(inner),
      lower_(lower),
      lower_elements_(lower.Elements()),
      local_to_global_(upper.Minus(lower).Elements()),
      base_(inner.Eval(lower)) {}

SubsetMask MinorOracle::ToGlobal(const SubsetMask& local) const {
  SubsetMask g = lower_;
  for (int i : local.Elements()) g.Insert(local_to_global_[i]);
  return g;
}

double MinorOracle::Eval(const SubsetMask& a) const {
  return inner_.Eval(ToGlobal(a)) - base_;
}

std::vector<double> MinorOracle::ChainValues(std::span<const int> order) const {
  std::vector<int> global = lower_elements_;
  for (int i : order) global.push_back(local_to_global_[i]);
  std::vector<double> inner = inner_.ChainValues(global);
  const size_t offset = lower_elements_.size();
  std::vector<double> out(order.size() + 1);
  out[0] = 0.0;
  for (size_t k = 1; k <= order.size(); ++k) out[k] = inner[offset + k] - base_;
  return out;
}

double CountingOracle::Eval(const SubsetMask& a) const {
  count_.fetch_add(1, std::memory_order_relaxed);
  return inner_.Eval(a);
}

std::vector<double> CountingOracle::ChainValues(
    std::span<const int> order) const {
  count_.fetch_add(static_cast<int64_t>(order.size()) + 1,
                   std::memory_order_relaxed);
  return inner_.ChainValues(order);
}

double AdditiveOracle::Eval(const SubsetMask& a) const {
  double s = 0.0;
  for (int i : a.Elements()) s += weights_[i];
  return s;
}

std::vector<double> AdditiveOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<double> out(order.size() + 1, 0.0);
  for (size_t k = 0; k < order.size(); ++k) {
    out[k + 1] = out[k] + weights_[order[k]];
  }
  return out;
}

double DualUpper(const CapacityOracle& mu, const SubsetMask& a) {
  if (a.Empty()) return 0.0;
  return 1.0 - mu.Eval(a.Complement());
}

namespace {

absl::StatusOr<bool> PairScan(const ExplicitCapacity& nu, double sign,
                              double tol) {
  const int n = nu.size();
  if (n > 12) {
    return absl::InvalidArgumentError(absl::StrCat(
        "instance too large for exhaustive check: n = ", n, " > 12"));
  }
  const uint64_t count = uint64_t{1} << n;
  for (uint64_t a = 0; a < count; ++a) {
    for (uint64_t b = a + 1; b < count; ++b) {
      const double lhs = nu.at(a) + nu.at(b);
      const double rhs = nu.at(a | b) + nu.at(a & b);
      if (sign * (lhs - rhs) > tol) return false;
    }
  }
  return true;
}

}  // namespace

absl::StatusOr<bool> CheckTwoMonotone(const ExplicitCapacity& mu, double tol) {
  return PairScan(mu, 1.0, tol);
}

absl::StatusOr<bool> CheckSubmodular(const ExplicitCapacity& nu, double tol) {
  return PairScan(nu, -1.0, tol);
}

absl::StatusOr<bool> CheckMembership(const CapacityOracle& mu,
                                     std::span<const double> p, double tol) {
  const int n = mu.size();
  if (n > ExplicitCapacity::kMaxSize) {
    return absl::InvalidArgumentError(absl::StrCat(
        "instance too large for exhaustive check: n = ", n, " > 20"));
  }
  if (static_cast<int>(p.size()) != n) {
    return absl::InvalidArgumentError("probability vector has wrong length");
  }
  double total = 0.0;
  for (double x : p) {
    if (x < -tol) return false;
    total += x;
  }
  if (std::abs(total - 1.0) > tol) return false;
  // Subset sums by lowest-bit recurrence.
  const uint64_t count = uint64_t{1} << n;
  std::vector<double> sums(count, 0.0);
  for (uint64_t bits = 1; bits < count; ++bits) {
    const int low = std::countr_zero(bits);
    sums[bits] = sums[bits & (bits - 1)] + p[low];
    if (sums[bits] < mu.Eval(SubsetMask::FromBits(n, bits)) - tol) return false;
  }
  return true;
}

absl::Status ValidateLowerProbability(const ExplicitCapacity& mu, double tol) {
  const int n = mu.size();
  const uint64_t full = (uint64_t{1} << n) - 1;
  if (std::abs(mu.at(0)) > tol) {
    return absl::InvalidArgumentError("mu(empty) must be 0");
  }
  if (std::abs(mu.at(full) - 1.0) > tol) {
    return absl::InvalidArgumentError("mu(Omega) must be 1");
  }
  for (uint64_t bits = 0; bits <= full; ++bits) {
    for (int i = 0; i < n; ++i) {
      const uint64_t bigger = bits | (uint64_t{1} << i);
      if (bigger != bits && mu.at(bigger) < mu.at(bits) - tol) {
        return absl::InvalidArgumentError(absl::StrCat(
            "mu is not monotone: mu(", SubsetMask::FromBits(n, bits).ToString(),
            ") > mu(", SubsetMask::FromBits(n, bigger).ToString(), ")"));
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace upent
