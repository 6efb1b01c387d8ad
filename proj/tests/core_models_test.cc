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

#include <cmath>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "upent/capacity.h"
#include "upent/entropy.h"
#include "upent/generate.h"
#include "upent/models.h"
#include "upent/random.h"
#include "upent/subset.h"

namespace upent {
namespace {

using ::upent::testing::ChainMass;
using ::upent::testing::ThreeOutcomeCapacity;
using ::upent::testing::ThreeOutcomePossibility;
using ::upent::testing::ThreeOutcomeIntervals;
using ::upent::testing::RandomOrder;
using ::upent::testing::Set;

TEST(SubsetMaskTest, SetAlgebra) {
  SubsetMask a = Set(70, {1, 3, 65});
  SubsetMask b = Set(70, {3, 4});
  EXPECT_EQ(a.Count(), 3);
  EXPECT_EQ(a.Union(b).Count(), 4);
  EXPECT_EQ(a.Intersection(b), Set(70, {3}));
  EXPECT_EQ(a.Minus(b), Set(70, {1, 65}));
  EXPECT_EQ(a.Complement().Count(), 67);
  EXPECT_TRUE(a.Complement().Complement() == a);
  EXPECT_TRUE(Set(70, {3}).IsSubsetOf(a));
  EXPECT_FALSE(b.IsSubsetOf(a));
  EXPECT_TRUE(a.Intersects(b));
  EXPECT_TRUE(SubsetMask::Full(70).IsFull());
  EXPECT_TRUE(SubsetMask(70).Empty());
  EXPECT_EQ(a.ToString(), "{1,3,65}");
  EXPECT_EQ(a.Elements(), (std::vector<int>{0, 2, 64}));
}

TEST(SubsetMaskTest, FromBits) {
  SubsetMask s = SubsetMask::FromBits(3, 0b101);
  EXPECT_EQ(s, Set(3, {1, 3}));
  EXPECT_EQ(s.word0(), 0b101u);
  EXPECT_EQ(SubsetMask::Full(3).word0(), 0b111u);
}

TEST(DualUpperTest, ThreeOutcomeCapacityTable) {
  ExplicitCapacity mu = ThreeOutcomeCapacity();
  EXPECT_NEAR(DualUpper(mu, Set(3, {1})), 0.2, 1e-15);
  EXPECT_NEAR(DualUpper(mu, Set(3, {1, 3})), 0.6, 1e-15);
  EXPECT_NEAR(DualUpper(mu, SubsetMask::Full(3)), 1.0, 1e-15);
  DualOracle upper(mu);
  const std::vector<double> expected = {0.0, 0.2, 0.5, 0.6, 0.5, 0.6, 0.9, 1.0};
  for (uint64_t bits = 0; bits < 8; ++bits) {
    EXPECT_NEAR(upper.Eval(SubsetMask::FromBits(3, bits)), expected[bits],
                1e-15);
  }
}

TEST(DualUpperTest, DualOfDualIsIdentity) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    absl::StatusOr<Instance> inst =
        Generate(InstanceType::kExplicit, 5, rng.Next());
    ASSERT_TRUE(inst.ok());
    const std::shared_ptr<const CapacityOracle> owner = inst->LowerOracle();
    const CapacityOracle& mu = *owner;
    DualOracle upper(mu);
    // Through the base reference; DualOracle(upper) would copy.
    DualOracle back(static_cast<const CapacityOracle&>(upper));
    for (uint64_t bits = 0; bits < 32; ++bits) {
      const SubsetMask a = SubsetMask::FromBits(5, bits);
      EXPECT_NEAR(back.Eval(a), mu.Eval(a), 1e-14);
    }
  }
}

TEST(MassFunctionTest, ChainMassValues) {
  MassFunction m = ChainMass();
  MassFunction::BelPl v = m.Evaluate(Set(4, {1, 2, 3}));
  EXPECT_NEAR(v.belief, 2.0 / 3, 1e-15);
  EXPECT_NEAR(v.plausibility, 1.0, 1e-15);
  v = m.Evaluate(SubsetMask(4));
  EXPECT_EQ(v.belief, 0.0);
  EXPECT_EQ(v.plausibility, 0.0);
  v = m.Evaluate(Set(4, {1}));
  EXPECT_EQ(v.belief, 0.0);
  EXPECT_NEAR(v.plausibility, 1.0 / 3, 1e-15);
}

TEST(MassFunctionTest, PlausibilityIsDualOfBelief) {
  MassFunction m = ChainMass();
  BeliefOracle bel(m);
  for (uint64_t bits = 0; bits < 16; ++bits) {
    const SubsetMask a = SubsetMask::FromBits(4, bits);
    EXPECT_NEAR(m.Plausibility(a), DualUpper(bel, a), 1e-15);
  }
}

TEST(MassFunctionTest, RejectsBadInput) {
  EXPECT_FALSE(MassFunction::Create(2, {Set(2, {1})}, {0.5}).ok());
  EXPECT_FALSE(MassFunction::Create(2, {SubsetMask(2)}, {1.0}).ok());
  EXPECT_FALSE(MassFunction::Create(2, {Set(2, {1}), Set(2, {2})}, {1.2, -0.2}).ok());
  EXPECT_FALSE(MassFunction::Create(2, {}, {}).ok());
}

TEST(PossibilityTest, ThreeOutcomePossibilityValues) {
  PossibilityDistribution pi = ThreeOutcomePossibility();
  EXPECT_NEAR(pi.Possibility(Set(3, {2, 3})), 0.6, 1e-15);
  EXPECT_EQ(pi.Possibility(SubsetMask::Full(3)), 1.0);
  EXPECT_EQ(pi.Necessity(SubsetMask::Full(3)), 1.0);
  EXPECT_NEAR(pi.Necessity(Set(3, {3})), 0.0, 1e-15);
  EXPECT_NEAR(pi.Necessity(Set(3, {1})), 0.4, 1e-15);
}

TEST(PossibilityTest, Normalization) {
  EXPECT_FALSE(PossibilityDistribution::Create({0.5, 0.2}).ok());
  absl::StatusOr<PossibilityDistribution> pi =
      PossibilityDistribution::Create({0.5, 0.2}, /*renormalize=*/true);
  ASSERT_TRUE(pi.ok());
  EXPECT_EQ(pi->pi()[0], 1.0);
  EXPECT_NEAR(pi->pi()[1], 0.4, 1e-15);
  EXPECT_FALSE(PossibilityDistribution::Create({1.0, -0.1}).ok());
}

TEST(PossibilityTest, SortedOrderIsStable) {
  absl::StatusOr<PossibilityDistribution> pi =
      PossibilityDistribution::Create({0.3, 1.0, 0.3, 0.6});
  ASSERT_TRUE(pi.ok());
  EXPECT_EQ(pi->sorted_to_original(), (std::vector<int>{1, 3, 0, 2}));
}

TEST(IntervalSetTest, ThreeOutcomeIntervalsLowerProbability) {
  IntervalSet iv = ThreeOutcomeIntervals();
  EXPECT_NEAR(iv.LowerProbability(Set(3, {1})), 0.1, 1e-15);
  EXPECT_NEAR(iv.LowerProbability(Set(3, {2, 3})), 0.6, 1e-15);
  EXPECT_NEAR(iv.LowerProbability(SubsetMask::Full(3)), 1.0, 1e-15);
  EXPECT_NEAR(iv.UpperProbability(Set(3, {1})), 0.4, 1e-15);
}

// Lower probability against the extreme points of a fine grid of the
// credal set.
TEST(IntervalSetTest, LowerProbabilityMatchesGridMinimum) {
  IntervalSet iv = ThreeOutcomeIntervals();
  const int steps = 1000;
  for (uint64_t bits = 1; bits < 8; ++bits) {
    const SubsetMask a = SubsetMask::FromBits(3, bits);
    double best = INFINITY;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        const double p1 = 0.1 + 0.3 * i / steps;
        const double p2 = 0.4 + 0.1 * j / steps;
        const double p3 = 1.0 - p1 - p2;
        if (p3 < 0.2 - 1e-12 || p3 > 0.6 + 1e-12) continue;
        const double p[3] = {p1, p2, p3};
        double mass = 0.0;
        for (int k = 0; k < 3; ++k) mass += a.Contains(k) ? p[k] : 0.0;
        best = std::min(best, mass);
      }
    }
    EXPECT_NEAR(iv.LowerProbability(a), best, 1e-9) << a.ToString();
  }
}

TEST(IntervalSetTest, RejectsEmptyCredalSet) {
  absl::StatusOr<IntervalSet> iv = IntervalSet::Create({0.6, 0.6}, {0.7, 0.7});
  EXPECT_TRUE(absl::IsFailedPrecondition(iv.status()));
  EXPECT_FALSE(IntervalSet::Create({0.5}, {0.4}).ok());
}

TEST(DistortedTest, Values) {
  absl::StatusOr<DistortedProbability> sq =
      DistortedProbability::Create({0.5, 0.5}, Distortion::kSquare);
  ASSERT_TRUE(sq.ok());
  EXPECT_NEAR(sq->Lower(Set(2, {1})), 0.25, 1e-15);
  EXPECT_EQ(sq->Lower(SubsetMask::Full(2)), 1.0);
  absl::StatusOr<DistortedProbability> root = DistortedProbability::Create(
      {0.5, 0.5}, Distortion::kOneMinusSqrtComplement);
  ASSERT_TRUE(root.ok());
  EXPECT_NEAR(root->Lower(Set(2, {2})), 1.0 - std::sqrt(0.5), 1e-15);
}

TEST(DistortedTest, EveryDistortionIsTwoMonotone) {
  for (Distortion f : {Distortion::kSquare, Distortion::kOneMinusSqrtComplement,
                       Distortion::kScaledExp}) {
    EXPECT_EQ(ApplyDistortion(f, 0.0), 0.0);
    EXPECT_NEAR(ApplyDistortion(f, 1.0), 1.0, 1e-15);
    for (uint64_t seed = 0; seed < 5; ++seed) {
      absl::StatusOr<Instance> inst =
          Generate(InstanceType::kExplicit, 6, seed, {.distortion = f});
      ASSERT_TRUE(inst.ok());
      absl::StatusOr<bool> ok = CheckTwoMonotone(*inst->explicit_capacity);
      ASSERT_TRUE(ok.ok());
      EXPECT_TRUE(*ok) << DistortionName(f) << " seed " << seed;
    }
  }
}

TEST(EntropyTest, ReferenceValues) {
  EXPECT_NEAR(Entropy(std::vector<double>{0.2, 0.4, 0.4}), 1.0549201679861442,
              1e-15);
  EXPECT_EQ(Entropy(std::vector<double>{1.0, 0.0, 0.0}), 0.0);
  EXPECT_NEAR(Entropy(std::vector<double>(4, 0.25)), std::log(4.0), 1e-15);
  EXPECT_NEAR(NatsToBits(std::log(4.0)), 2.0, 1e-15);
}

TEST(EntropyTest, ValidateProbability) {
  EXPECT_TRUE(ValidateProbability(std::vector<double>{0.5, 0.5}).ok());
  EXPECT_FALSE(ValidateProbability(std::vector<double>{0.6, 0.5}).ok());
  EXPECT_FALSE(ValidateProbability(std::vector<double>{1.5, -0.5}).ok());
}

TEST(EntropyTest, ValidateChain) {
  NestedChain good{{Set(3, {1}), SubsetMask::Full(3)}, {1.0 / 3, 0.4}};
  EXPECT_TRUE(ValidateChain(good, 3).ok());
  NestedChain not_nested{{Set(3, {1}), Set(3, {2, 3}), SubsetMask::Full(3)},
                         {0.1, 0.2, 0.3}};
  EXPECT_FALSE(ValidateChain(not_nested, 3).ok());
  NestedChain short_chain{{Set(3, {1})}, {0.1}};
  EXPECT_FALSE(ValidateChain(short_chain, 3).ok());
}

TEST(CheckTwoMonotoneTest, Cases) {
  absl::StatusOr<bool> r = CheckTwoMonotone(ThreeOutcomeCapacity());
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(*r);
  absl::StatusOr<ExplicitCapacity> additive =
      ExplicitCapacity::Materialize(AdditiveOracle({0.2, 0.3, 0.5}));
  ASSERT_TRUE(additive.ok());
  EXPECT_TRUE(*CheckTwoMonotone(*additive));
  // mu({1}) + mu({2}) > mu({1,2}).
  absl::StatusOr<ExplicitCapacity> bad =
      ExplicitCapacity::Create(2, {0.0, 0.6, 0.6, 1.0});
  ASSERT_TRUE(bad.ok());
  EXPECT_FALSE(*CheckTwoMonotone(*bad));
  EXPECT_TRUE(*CheckSubmodular(*bad));
}

TEST(CheckTwoMonotoneTest, SizeGuard) {
  std::vector<double> values(size_t{1} << 13, 0.0);
  values.back() = 1.0;
  absl::StatusOr<ExplicitCapacity> big = ExplicitCapacity::Create(13, values);
  ASSERT_TRUE(big.ok());
  absl::StatusOr<bool> r = CheckTwoMonotone(*big);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.status().message().find("instance too large for exhaustive check"),
            absl::string_view::npos);
}

TEST(CheckMembershipTest, ThreeOutcomeCapacity) {
  ExplicitCapacity mu = ThreeOutcomeCapacity();
  EXPECT_TRUE(*CheckMembership(mu, std::vector<double>{0.2, 0.4, 0.4}, 1e-12));
  EXPECT_FALSE(*CheckMembership(mu, std::vector<double>{0.05, 0.5, 0.45}, 1e-12));
  EXPECT_FALSE(CheckMembership(mu, std::vector<double>{0.5, 0.5}, 1e-12).ok());
}

TEST(ValidateLowerProbabilityTest, Cases) {
  EXPECT_TRUE(ValidateLowerProbability(ThreeOutcomeCapacity()).ok());
  EXPECT_FALSE(
      ValidateLowerProbability(*ExplicitCapacity::Create(2, {0.0, 0.5, 0.2, 0.9}))
          .ok());
  EXPECT_FALSE(
      ValidateLowerProbability(*ExplicitCapacity::Create(2, {0.0, 0.7, 0.2, 0.6}))
          .ok());
  EXPECT_FALSE(ExplicitCapacity::Create(2, {0.1, 0.2, 0.2, 1.0}).ok());
}

// Every structured ChainValues override agrees with prefix-by-prefix Eval.
TEST(ChainValuesTest, MatchesEvalOnPrefixes) {
  Rng rng(11);
  for (InstanceType type :
       {InstanceType::kMass, InstanceType::kPossibility, InstanceType::kIntervals,
        InstanceType::kDistorted, InstanceType::kExplicit}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + static_cast<int>(rng.Below(7));
      absl::StatusOr<Instance> inst = Generate(type, n, rng.Next());
      ASSERT_TRUE(inst.ok()) << inst.status();
      const std::shared_ptr<const CapacityOracle> owner = inst->LowerOracle();
    const CapacityOracle& mu = *owner;
      DualOracle upper(mu);
      std::vector<const CapacityOracle*> oracles = {&mu, &upper};
      std::unique_ptr<CapacityOracle> extra;
      if (inst->mass) extra = std::make_unique<PlausibilityOracle>(*inst->mass);
      if (inst->possibility) {
        extra = std::make_unique<PossibilityOracle>(*inst->possibility);
      }
      if (inst->intervals) {
        extra = std::make_unique<IntervalUpperOracle>(*inst->intervals);
      }
      if (extra) oracles.push_back(extra.get());
      std::vector<int> order = RandomOrder(n, rng);
      // A partial order exercises prefixes that stop short of Omega.
      std::vector<int> partial(order.begin(), order.begin() + n / 2);
      for (const CapacityOracle* nu : oracles) {
        for (const std::vector<int>& o : {order, partial}) {
          std::vector<double> values = nu->ChainValues(o);
          ASSERT_EQ(values.size(), o.size() + 1);
          SubsetMask prefix(n);
          EXPECT_NEAR(values[0], 0.0, 1e-15);
          for (size_t k = 0; k < o.size(); ++k) {
            prefix.Insert(o[k]);
            EXPECT_NEAR(values[k + 1], nu->Eval(prefix), 1e-12)
                << InstanceTypeName(type) << " " << prefix.ToString();
          }
        }
      }
    }
  }
}

TEST(MinorOracleTest, Contraction) {
  ExplicitCapacity mu = ThreeOutcomeCapacity();
  MinorOracle minor(mu, Set(3, {1}), SubsetMask::Full(3));
  ASSERT_EQ(minor.size(), 2);
  EXPECT_EQ(minor.local_to_global(), (std::vector<int>{1, 2}));
  EXPECT_NEAR(minor.Eval(Set(2, {1})), 0.5 - 0.1, 1e-15);
  EXPECT_NEAR(minor.Eval(Set(2, {1, 2})), 1.0 - 0.1, 1e-15);
  EXPECT_EQ(minor.ToGlobal(Set(2, {2})), Set(3, {1, 3}));
}

TEST(CountingOracleTest, CountsEvalsAndChains) {
  ExplicitCapacity mu = ThreeOutcomeCapacity();
  CountingOracle counter(mu);
  counter.Eval(Set(3, {1}));
  counter.ChainValues(std::vector<int>{0, 1, 2});
  EXPECT_EQ(counter.count(), 1 + 4);
  counter.Reset();
  EXPECT_EQ(counter.count(), 0);
}

TEST(ShiftedOracleTest, Values) {
  ExplicitCapacity mu = ThreeOutcomeCapacity();
  ShiftedOracle shifted(mu, 2.0, 0.5, {1.0, 2.0, 3.0});
  EXPECT_NEAR(shifted.Eval(Set(3, {2, 3})), 2.0 * 0.8 - 0.5 * 5.0, 1e-15);
}

}  // namespace
}  // namespace upent
