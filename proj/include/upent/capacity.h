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

#ifndef UPENT_CAPACITY_H_
#define UPENT_CAPACITY_H_

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/subset.h"

namespace upent {

enum class QueryCost { kConstant, kLinearInFocalSets, kLinearInN };

// Evaluation oracle for a set function nu on {0..n-1} with nu(empty) = 0.
// Implementations are immutable and safe for concurrent evaluation.
class CapacityOracle {
 public:
  virtual ~CapacityOracle() = default;

  virtual int size() const = 0;
  virtual double Eval(const SubsetMask& a) const = 0;

  // Values on the prefixes of `order` (distinct elements, possibly fewer than
  // n): out[k] = nu({order[0], ..., order[k-1]}) for k = 0..order.size().
  // The default issues one Eval per prefix; structured representations
  // override this with an incremental pass.
  virtual std::vector<double> ChainValues(std::span<const int> order) const;

  virtual QueryCost cost_hint() const { return QueryCost::kLinearInN; }
};

// Dense table over all 2^n subsets, indexed by mask bits. n <= 20.
class ExplicitCapacity : public CapacityOracle {
 public:
  static constexpr int kMaxSize = 20;

  // Validates nu(empty) = 0 only; lower-probability checks live in
  // ValidateLowerProbability.
  static absl::StatusOr<ExplicitCapacity> Create(int n,
                                                 std::vector<double> values);
  static absl::StatusOr<ExplicitCapacity> Materialize(
      const CapacityOracle& oracle);

  int size() const override { return n_; }
  double Eval(const SubsetMask& a) const override { return values_[a.word0()]; }
  QueryCost cost_hint() const override { return QueryCost::kConstant; }

  double at(uint64_t bits) const { return values_[bits]; }
  const std::vector<double>& values() const { return values_; }

 private:
  ExplicitCapacity(int n, std::vector<double> values)
      : n_(n), values_(std::move(values)) {}

  int n_;
  std::vector<double> values_;
};

// Conjugate nu^#(A) = nu(Omega) - nu(Omega \ A). For a lower probability this
// is the upper probability 1 - mu(Omega \ A).
class DualOracle : public CapacityOracle {
 public:
  explicit DualOracle(const CapacityOracle& inner);

  int size() const override { return inner_.size(); }
  double Eval(const SubsetMask& a) const override;
  std::vector<double> ChainValues(std::span<const int> order) const override;
  QueryCost cost_hint() const override { return inner_.cost_hint(); }

 private:
  const CapacityOracle& inner_;
  double total_;
};

// scale * nu(A) - alpha * sum_{i in A} b_i. Empty weights mean b = 1.
class ShiftedOracle : public CapacityOracle {
 public:
  ShiftedOracle(const CapacityOracle& inner, double scale, double alpha,
                std::vector<double> weights = {});

  int size() const override { return inner_.size(); }
  double Eval(const SubsetMask& a) const override;
  std::vector<double> ChainValues(std::span<const int> order) const override;
  QueryCost cost_hint() const override { return inner_.cost_hint(); }

 private:
  double Weight(int i) const { return weights_.empty() ? 1.0 : weights_[i]; }

  const CapacityOracle& inner_;
  double scale_;
  double alpha_;
  std::vector<double> weights_;
};

// The minor of nu on the interval [lower, upper]: ground set upper \ lower
// (renumbered 0..k-1 in increasing original order) and value
// nu(lower + B) - nu(lower). With upper = Omega this is the contraction
// mu'(B) = mu(B u A) - mu(A) used when peeling off a block.
class MinorOracle : public CapacityOracle {
 public:
  MinorOracle(const CapacityOracle& inner, const SubsetMask& lower,
              const SubsetMask& upper);

  int size() const override { return static_cast<int>(local_to_global_.size()); }
  double Eval(const SubsetMask& a) const override;
  std::vector<double> ChainValues(std::span<const int> order) const override;
  QueryCost cost_hint() const override { return inner_.cost_hint(); }

  // lower + the image of `local`.
  SubsetMask ToGlobal(const SubsetMask& local) const;
  const std::vector<int>& local_to_global() const { return local_to_global_; }
  const SubsetMask& lower() const { return lower_; }

 private:
  const CapacityOracle& inner_;
  SubsetMask lower_;
  std::vector<int> lower_elements_;
  std::vector<int> local_to_global_;
  double base_;
};

// Forwards to `inner` and counts evaluations. A ChainValues call over k
// elements counts as k + 1 evaluations.
class CountingOracle : public CapacityOracle {
 public:
  explicit CountingOracle(const CapacityOracle& inner) : inner_(inner) {}

  int size() const override { return inner_.size(); }
  double Eval(const SubsetMask& a) const override;
  std::vector<double> ChainValues(std::span<const int> order) const override;
  QueryCost cost_hint() const override { return inner_.cost_hint(); }

  int64_t count() const { return count_.load(std::memory_order_relaxed); }
  void Reset() { count_.store(0); }

 private:
  const CapacityOracle& inner_;
  mutable std::atomic<int64_t> count_{0};
};

// A probability (or any additive) measure: nu(A) = sum_{i in A} w_i.
class AdditiveOracle : public CapacityOracle {
 public:
  explicit AdditiveOracle(std::vector<double> weights)
      : weights_(std::move(weights)) {}

  int size() const override { return static_cast<int>(weights_.size()); }
  double Eval(const SubsetMask& a) const override;
  std::vector<double> ChainValues(std::span<const int> order) const override;

 private:
  std::vector<double> weights_;
};

// 1 - mu(Omega \ A).
double DualUpper(const CapacityOracle& mu, const SubsetMask& a);

// Pair scan of mu(A) + mu(B) <= mu(A u B) + mu(A n B) + tol. n <= 12.
absl::StatusOr<bool> CheckTwoMonotone(const ExplicitCapacity& mu,
                                      double tol = 1e-12);
// Same scan with the inequality reversed. n <= 12.
absl::StatusOr<bool> CheckSubmodular(const ExplicitCapacity& nu,
                                     double tol = 1e-12);

// p(A) >= mu(A) - tol for all A and |sum p - 1| <= tol. n <= 20.
absl::StatusOr<bool> CheckMembership(const CapacityOracle& mu,
                                     std::span<const double> p, double tol);

// mu(empty) = 0, mu(Omega) = 1 and monotone under inclusion, within tol.
absl::Status ValidateLowerProbability(const ExplicitCapacity& mu,
                                      double tol = 1e-12);

}  // namespace upent

#endif  // UPENT_CAPACITY_H_
