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

#include "upent/models.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace upent {

namespace {
constexpr double kSumTol = 1e-12;
}  // namespace

absl::StatusOr<MassFunction> MassFunction::Create(
    int n, std::vector<SubsetMask> focal_sets, std::vector<double> masses) {
  if (n <= 0) return absl::InvalidArgumentError("n must be positive");
  if (focal_sets.size() != masses.size()) {
    return absl::InvalidArgumentError(
        "focal_sets and masses must have the same length");
  }
  if (focal_sets.empty()) {
    return absl::InvalidArgumentError("at least one focal set is required");
  }
  double total = 0.0;
  for (size_t k = 0; k < focal_sets.size(); ++k) {
    if (focal_sets[k].universe_size() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("focal set ", k, " has the wrong ground set size"));
    }
    if (focal_sets[k].Empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("focal set ", k, " is empty"));
    }
    if (!(masses[k] > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("mass of focal set ", k, " must be positive"));
    }
    for (size_t j = 0; j < k; ++j) {
      if (focal_sets[j] == focal_sets[k]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "focal sets ", j, " and ", k, " coincide: ",
            focal_sets[k].ToString()));
      }
    }
    total += masses[k];
  }
  if (std::abs(total - 1.0) > kSumTol) {
    return absl::InvalidArgumentError(
        absl::StrCat("masses sum to ", total, ", expected 1"));
  }
  MassFunction m;
  m.n_ = n;
  m.incidence_.assign(n, {});
  for (size_t k = 0; k < focal_sets.size(); ++k) {
    for (int i : focal_sets[k].Elements()) {
      m.incidence_[i].push_back(static_cast<int>(k));
    }
  }
  m.focal_sets_ = std::move(focal_sets);
  m.masses_ = std::move(masses);
  return m;
}

MassFunction::BelPl MassFunction::Evaluate(const SubsetMask& b) const {
  BelPl r{0.0, 0.0};
  for (size_t k = 0; k < focal_sets_.size(); ++k) {
    if (focal_sets_[k].IsSubsetOf(b)) r.belief += masses_[k];
    if (focal_sets_[k].Intersects(b)) r.plausibility += masses_[k];
  }
  return r;
}

std::vector<double> BeliefOracle::ChainValues(
    std::span<const int> order) const {
  const auto& sets = m_.focal_sets();
  std::vector<int> missing(sets.size());
  for (size_t k = 0; k < sets.size(); ++k) missing[k] = sets[k].Count();
  std::vector<double> out(order.size() + 1, 0.0);
  double bel = 0.0;
  for (size_t t = 0; t < order.size(); ++t) {
    for (int k : m_.focal_sets_of(order[t])) {
      if (--missing[k] == 0) bel += m_.masses()[k];
    }
    out[t + 1] = bel;
  }
  return out;
}

std::vector<double> PlausibilityOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<char> hit(m_.focal_sets().size(), 0);
  std::vector<double> out(order.size() + 1, 0.0);
  double pl = 0.0;
  for (size_t t = 0; t < order.size(); ++t) {
    for (int k : m_.focal_sets_of(order[t])) {
      if (!hit[k]) {
        hit[k] = 1;
        pl += m_.masses()[k];
      }
    }
    out[t + 1] = pl;
  }
  return out;
}

absl::StatusOr<PossibilityDistribution> PossibilityDistribution::Create(
    std::vector<double> pi, bool renormalize) {
  if (pi.empty()) return absl::InvalidArgumentError("pi must be nonempty");
  double top = 0.0;
  for (size_t i = 0; i < pi.size(); ++i) {
    if (!(pi[i] >= 0.0 && pi[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("pi[", i + 1, "] = ", pi[i], " is outside [0, 1]"));
    }
    top = std::max(top, pi[i]);
  }
  if (top <= 0.0) {
    return absl::InvalidArgumentError("pi must have a positive entry");
  }
  if (std::abs(top - 1.0) > kSumTol) {
    if (!renormalize) {
      return absl::InvalidArgumentError(
          absl::StrCat("max pi is ", top, ", expected 1"));
    }
    for (double& x : pi) x /= top;
  }
  PossibilityDistribution d;
  d.order_.resize(pi.size());
  std::iota(d.order_.begin(), d.order_.end(), 0);
  if (!std::is_sorted(pi.begin(), pi.end(), std::greater<>())) {
    std::stable_sort(d.order_.begin(), d.order_.end(),
                     [&](int a, int b) { return pi[a] > pi[b]; });
  }
  d.pi_ = std::move(pi);
  return d;
}

double PossibilityDistribution::Possibility(const SubsetMask& a) const {
  double m = 0.0;
  for (int i : a.Elements()) m = std::max(m, pi_[i]);
  return m;
}

double PossibilityDistribution::Necessity(const SubsetMask& a) const {
  double m = 0.0;
  for (int i = 0; i < size(); ++i) {
    if (!a.Contains(i)) m = std::max(m, pi_[i]);
  }
  return 1.0 - m;
}

std::vector<double> PossibilityOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<double> out(order.size() + 1, 0.0);
  double m = 0.0;
  for (size_t t = 0; t < order.size(); ++t) {
    m = std::max(m, pi_.pi()[order[t]]);
    out[t + 1] = m;
  }
  return out;
}

std::vector<double> NecessityOracle::ChainValues(
    std::span<const int> order) const {
  const int n = size();
  const size_t k = order.size();
  std::vector<char> in_order(n, 0);
  for (int i : order) in_order[i] = 1;
  double rest = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!in_order[i]) rest = std::max(rest, pi_.pi()[i]);
  }
  // suffix[t] = max pi over order[t..k) and the elements outside `order`.
  std::vector<double> suffix(k + 1, rest);
  for (size_t t = k; t-- > 0;) {
    suffix[t] = std::max(suffix[t + 1], pi_.pi()[order[t]]);
  }
  std::vector<double> out(k + 1);
  for (size_t t = 0; t <= k; ++t) out[t] = 1.0 - suffix[t];
  out[0] = 0.0;
  return out;
}

absl::StatusOr<IntervalSet> IntervalSet::Create(std::vector<double> lower,
                                                std::vector<double> upper) {
  if (lower.size() != upper.size()) {
    return absl::InvalidArgumentError("l and u must have the same length");
  }
  if (lower.empty()) return absl::InvalidArgumentError("no intervals given");
  double ls = 0.0;
  double us = 0.0;
  for (size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] >= 0.0 && lower[i] <= upper[i] && upper[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("interval ", i + 1, " = [", lower[i], ", ", upper[i],
                       "] violates 0 <= l <= u <= 1"));
    }
    ls += lower[i];
    us += upper[i];
  }
  if (ls > 1.0 + kSumTol || us < 1.0 - kSumTol) {
    return absl::FailedPreconditionError(absl::StrCat(
        "empty credal set: sum l = ", ls, ", sum u = ", us));
  }
  IntervalSet iv;
  iv.l_ = std::move(lower);
  iv.u_ = std::move(upper);
  iv.lower_sum_ = ls;
  iv.upper_sum_ = us;
  return iv;
}

double IntervalSet::LowerProbability(const SubsetMask& a) const {
  if (a.Empty()) return 0.0;
  if (a.IsFull()) return 1.0;
  double l_in = 0.0;
  double u_out = 0.0;
  for (int i = 0; i < size(); ++i) {
    if (a.Contains(i)) {
      l_in += l_[i];
    } else {
      u_out += u_[i];
    }
  }
  return std::max(l_in, 1.0 - u_out);
}

double IntervalSet::UpperProbability(const SubsetMask& a) const {
  if (a.Empty()) return 0.0;
  if (a.IsFull()) return 1.0;
  double u_in = 0.0;
  double l_out = 0.0;
  for (int i = 0; i < size(); ++i) {
    if (a.Contains(i)) {
      u_in += u_[i];
    } else {
      l_out += l_[i];
    }
  }
  return std::min(u_in, 1.0 - l_out);
}

namespace {

// Over a prefix chain: in[t] = sum of `inside` over the prefix, out[t] = sum
// of `outside` over the complement.
void PrefixSums(std::span<const int> order, const std::vector<double>& inside,
                const std::vector<double>& outside, std::vector<double>& in,
                std::vector<double>& out) {
  const size_t k = order.size();
  double outside_total = 0.0;
  for (double x : outside) outside_total += x;
  in.assign(k + 1, 0.0);
  out.assign(k + 1, outside_total);
  double removed = 0.0;
  for (size_t t = 0; t < k; ++t) {
    in[t + 1] = in[t] + inside[order[t]];
    removed += outside[order[t]];
    out[t + 1] = outside_total - removed;
  }
}

}  // namespace

std::vector<double> IntervalLowerOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<double> l_in, u_out;
  PrefixSums(order, iv_.lower(), iv_.upper(), l_in, u_out);
  std::vector<double> out(order.size() + 1);
  out[0] = 0.0;
  for (size_t t = 1; t <= order.size(); ++t) {
    out[t] = static_cast<int>(t) == size() ? 1.0
                                           : std::max(l_in[t], 1.0 - u_out[t]);
  }
  return out;
}

std::vector<double> IntervalUpperOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<double> u_in, l_out;
  PrefixSums(order, iv_.upper(), iv_.lower(), u_in, l_out);
  std::vector<double> out(order.size() + 1);
  out[0] = 0.0;
  for (size_t t = 1; t <= order.size(); ++t) {
    out[t] = static_cast<int>(t) == size() ? 1.0
                                           : std::min(u_in[t], 1.0 - l_out[t]);
  }
  return out;
}

std::string_view DistortionName(Distortion d) {
  switch (d) {
    case Distortion::kSquare:
      return "square";
    case Distortion::kOneMinusSqrtComplement:
      return "one_minus_sqrt_complement";
    case Distortion::kScaledExp:
      return "scaled_exp";
  }
  return "unknown";
}

absl::StatusOr<Distortion> ParseDistortion(std::string_view name) {
  for (Distortion d : {Distortion::kSquare, Distortion::kOneMinusSqrtComplement,
                       Distortion::kScaledExp}) {
    if (name == DistortionName(d)) return d;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown distortion '", std::string(name),
      "' (expected square, one_minus_sqrt_complement or scaled_exp)"));
}

double ApplyDistortion(Distortion d, double x) {
  x = std::clamp(x, 0.0, 1.0);
  switch (d) {
    case Distortion::kSquare:
      return x * x;
    case Distortion::kOneMinusSqrtComplement:
      return 1.0 - std::sqrt(1.0 - x);
    case Distortion::kScaledExp:
      return std::expm1(2.0 * x) / std::expm1(2.0);
  }
  return x;
}

absl::StatusOr<DistortedProbability> DistortedProbability::Create(
    std::vector<double> p_star, Distortion f) {
  if (p_star.empty()) return absl::InvalidArgumentError("p_star is empty");
  double total = 0.0;
  for (size_t i = 0; i < p_star.size(); ++i) {
    if (!(p_star[i] >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("p_star[", i + 1, "] is negative"));
    }
    total += p_star[i];
  }
  if (std::abs(total - 1.0) > kSumTol) {
    return absl::InvalidArgumentError(
        absl::StrCat("p_star sums to ", total, ", expected 1"));
  }
  DistortedProbability d;
  d.p_star_ = std::move(p_star);
  d.f_ = f;
  return d;
}

double DistortedProbability::Lower(const SubsetMask& a) const {
  if (a.IsFull()) return 1.0;
  double s = 0.0;
  for (int i : a.Elements()) s += p_star_[i];
  return ApplyDistortion(f_, s);
}

std::vector<double> DistortedOracle::ChainValues(
    std::span<const int> order) const {
  std::vector<double> out(order.size() + 1, 0.0);
  double s = 0.0;
  for (size_t t = 0; t < order.size(); ++t) {
    s += d_.p_star()[order[t]];
    out[t + 1] = static_cast<int>(t + 1) == size()
                     ? 1.0
                     : ApplyDistortion(d_.distortion(), s);
  }
  return out;
}

}  // namespace upent
