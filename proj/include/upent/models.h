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

#ifndef UPENT_MODELS_H_
#define UPENT_MODELS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/capacity.h"
#include "upent/subset.h"

namespace upent {

// Dempster-Shafer mass function given by its focal sets.
class MassFunction {
 public:
  static absl::StatusOr<MassFunction> Create(int n,
                                             std::vector<SubsetMask> focal_sets,
                                             std::vector<double> masses);

  int size() const { return n_; }
  const std::vector<SubsetMask>& focal_sets() const { return focal_sets_; }
  const std::vector<double>& masses() const { return masses_; }
  // Indices of focal sets containing element i.
  const std::vector<int>& focal_sets_of(int i) const { return incidence_[i]; }

  struct BelPl {
    double belief;
    double plausibility;
  };
  // Both values in one pass over the focal sets.
  BelPl Evaluate(const SubsetMask& b) const;
  double Belief(const SubsetMask& b) const { return Evaluate(b).belief; }
  double Plausibility(const SubsetMask& b) const {
    return Evaluate(b).plausibility;
  }

 private:
  MassFunction() = default;

  int n_ = 0;
  std::vector<SubsetMask> focal_sets_;
  std::vector<double> masses_;
  std::vector<std::vector<int>> incidence_;
};

class BeliefOracle : public CapacityOracle {
 public:
  explicit BeliefOracle(const MassFunction& m) : m_(m) {}
  int size() const override { return m_.size(); }
  double Eval(const SubsetMask& a) const override { return m_.Belief(a); }
  std::vector<double> ChainValues(std::span<const int> order) const override;
  QueryCost cost_hint() const override { return QueryCost::kLinearInFocalSets; }

 private:
  const MassFunction& m_;
};

class PlausibilityOracle : public CapacityOracle {
 public:
  explicit PlausibilityOracle(const MassFunction& m) : m_(m) {}
  int size() const override { return m_.size(); }
  double Eval(const SubsetMask& a) const override { return m_.Plausibility(a); }
  std::vector<double> ChainValues(std::span<const int> order) const override;
  QueryCost cost_hint() const override { return QueryCost::kLinearInFocalSets; }

 private:
  const MassFunction& m_;
};

// Possibility degrees in original element order, with the stable descending
// sort precomputed.
class PossibilityDistribution {
 public:
  // Requires pi_i in [0, 1] and max pi = 1; with `renormalize` the degrees
  // are divided by their maximum instead.
  static absl::StatusOr<PossibilityDistribution> Create(
      std::vector<double> pi, bool renormalize = false);

  int size() const { return static_cast<int>(pi_.size()); }
  const std::vector<double>& pi() const { return pi_; }
  // sorted_to_original()[k] is the label of the k-th largest degree.
  const std::vector<int>& sorted_to_original() const { return order_; }

  double Possibility(const SubsetMask& a) const;
  double Necessity(const SubsetMask& a) const;

 private:
  PossibilityDistribution() = default;

  std::vector<double> pi_;
  std::vector<int> order_;
};

class PossibilityOracle : public CapacityOracle {
 public:
  explicit PossibilityOracle(const PossibilityDistribution& pi) : pi_(pi) {}
  int size() const override { return pi_.size(); }
  double Eval(const SubsetMask& a) const override { return pi_.Possibility(a); }
  std::vector<double> ChainValues(std::span<const int> order) const override;

 private:
  const PossibilityDistribution& pi_;
};

class NecessityOracle : public CapacityOracle {
 public:
  explicit NecessityOracle(const PossibilityDistribution& pi) : pi_(pi) {}
  int size() const override { return pi_.size(); }
  double Eval(const SubsetMask& a) const override { return pi_.Necessity(a); }
  std::vector<double> ChainValues(std::span<const int> order) const override;

 private:
  const PossibilityDistribution& pi_;
};

// Credal set {p in simplex : l_i <= p_i <= u_i}.
class IntervalSet {
 public:
  static absl::StatusOr<IntervalSet> Create(std::vector<double> lower,
                                            std::vector<double> upper);

  int size() const { return static_cast<int>(l_.size()); }
  const std::vector<double>& lower() const { return l_; }
  const std::vector<double>& upper() const { return u_; }
  double lower_sum() const { return lower_sum_; }
  double upper_sum() const { return upper_sum_; }

  // max(sum_A l, 1 - sum_{not A} u) = min_{p in P} p(A).
  double LowerProbability(const SubsetMask& a) const;
  // min(sum_A u, 1 - sum_{not A} l) = max_{p in P} p(A).
  double UpperProbability(const SubsetMask& a) const;

 private:
  IntervalSet() = default;

  std::vector<double> l_;
  std::vector<double> u_;
  double lower_sum_ = 0.0;
  double upper_sum_ = 0.0;
};

class IntervalLowerOracle : public CapacityOracle {
 public:
  explicit IntervalLowerOracle(const IntervalSet& iv) : iv_(iv) {}
  int size() const override { return iv_.size(); }
  double Eval(const SubsetMask& a) const override {
    return iv_.LowerProbability(a);
  }
  std::vector<double> ChainValues(std::span<const int> order) const override;

 private:
  const IntervalSet& iv_;
};

class IntervalUpperOracle : public CapacityOracle {
 public:
  explicit IntervalUpperOracle(const IntervalSet& iv) : iv_(iv) {}
  int size() const override { return iv_.size(); }
  double Eval(const SubsetMask& a) const override {
    return iv_.UpperProbability(a);
  }
  std::vector<double> ChainValues(std::span<const int> order) const override;

 private:
  const IntervalSet& iv_;
};

enum class Distortion { kSquare, kOneMinusSqrtComplement, kScaledExp };

std::string_view DistortionName(Distortion d);
absl::StatusOr<Distortion> ParseDistortion(std::string_view name);
// f(x) for the named convex distortion; f(0) = 0, f(1) = 1.
double ApplyDistortion(Distortion d, double x);

// mu(A) = f(p*(A)) for A != Omega, mu(Omega) = 1, with f convex. Such a
// distortion of a probability is 2-monotone.
class DistortedProbability {
 public:
  static absl::StatusOr<DistortedProbability> Create(std::vector<double> p_star,
                                                     Distortion f);

  int size() const { return static_cast<int>(p_star_.size()); }
  const std::vector<double>& p_star() const { return p_star_; }
  Distortion distortion() const { return f_; }

  double Lower(const SubsetMask& a) const;

 private:
  DistortedProbability() = default;

  std::vector<double> p_star_;
  Distortion f_ = Distortion::kSquare;
};

class DistortedOracle : public CapacityOracle {
 public:
  explicit DistortedOracle(const DistortedProbability& d) : d_(d) {}
  int size() const override { return d_.size(); }
  double Eval(const SubsetMask& a) const override { return d_.Lower(a); }
  std::vector<double> ChainValues(std::span<const int> order) const override;

 private:
  const DistortedProbability& d_;
};

}  // namespace upent

#endif  // UPENT_MODELS_H_
