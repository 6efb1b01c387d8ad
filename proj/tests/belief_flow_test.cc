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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "upent/belief_flow.h"
#include "upent/capacity.h"
#include "upent/exact.h"
#include "upent/generate.h"
#include "upent/models.h"
#include "upent/random.h"
#include "upent/sfm.h"

namespace upent {
namespace {

using ::upent::testing::ChainMass;
using ::upent::testing::MaxAbsDiff;
using ::upent::testing::Set;

struct ArcCounts {
  int source = 0;
  int infinite = 0;
  int sink = 0;
};

ArcCounts CountArcs(const FlowNetwork& net) {
  ArcCounts c;
  for (int e = 0; e < static_cast<int>(net.arcs().size()); e += 2) {
    const FlowNetwork::Arc& a = net.arcs()[e];
    if (a.from == net.source()) ++c.source;
    if (a.to == net.sink()) ++c.sink;
    if (a.capacity == net.cap_inf()) ++c.infinite;
  }
  return c;
}

TEST(BuildNetworkTest, ChainMassShape) {
  FlowNetwork net = BuildNetwork(ChainMass(), 0.3);
  ArcCounts c = CountArcs(net);
  EXPECT_EQ(c.source, 4);
  EXPECT_EQ(c.infinite, 6);
  EXPECT_EQ(c.sink, 3);
  EXPECT_EQ(net.forward_arc_count(), 13);
  EXPECT_EQ(net.node_count(), 2 + 4 + 3);
  EXPECT_GT(net.cap_inf(), 4 * 0.3 + 1.0);
}

TEST(BuildNetworkTest, VacuousShape) {
  absl::StatusOr<MassFunction> m =
      MassFunction::Create(5, {SubsetMask::Full(5)}, {1.0});
  ASSERT_TRUE(m.ok());
  ArcCounts c = CountArcs(BuildNetwork(*m, 0.5));
  EXPECT_EQ(c.source, 5);
  EXPECT_EQ(c.infinite, 5);
  EXPECT_EQ(c.sink, 1);
}

TEST(BuildNetworkTest, ContainmentArcs) {
  absl::StatusOr<MassFunction> m =
      MassFunction::Create(2, {Set(2, {1}), Set(2, {1, 2})}, {0.5, 0.5});
  ASSERT_TRUE(m.ok());
  FlowNetwork net = BuildNetwork(*m, 0.5);
  std::vector<std::pair<int, int>> middle;
  for (int e = 0; e < static_cast<int>(net.arcs().size()); e += 2) {
    const FlowNetwork::Arc& a = net.arcs()[e];
    if (a.capacity == net.cap_inf()) middle.emplace_back(a.from, a.to);
  }
  std::sort(middle.begin(), middle.end());
  const std::vector<std::pair<int, int>> expected = {
      {net.element_node(0), net.focal_node(0)},
      {net.element_node(0), net.focal_node(1)},
      {net.element_node(1), net.focal_node(1)}};
  EXPECT_EQ(middle, expected);
}

TEST(BuildNetworkTest, ResidualPairs) {
  FlowNetwork net = BuildNetwork(ChainMass(), 0.3);
  for (size_t e = 0; e < net.arcs().size(); e += 2) {
    EXPECT_EQ(net.arcs()[e].from, net.arcs()[e ^ 1].to);
    EXPECT_EQ(net.arcs()[e].to, net.arcs()[e ^ 1].from);
    EXPECT_EQ(net.arcs()[e ^ 1].capacity, 0.0);
  }
}

TEST(BuildNetworkTest, Dot) {
  const std::string dot = BuildNetwork(ChainMass(), 0.25).ToDot();
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("s -> e1"), std::string::npos);
  EXPECT_NE(dot.find("F3 -> t"), std::string::npos);
}

TEST(MaxFlowTest, ChainMassValues) {
  FlowNetwork one = BuildNetwork(ChainMass(), 1.0);
  EXPECT_NEAR(MaxFlow(one), 1.0, 1e-12);
  FlowNetwork zero = BuildNetwork(ChainMass(), 0.0);
  EXPECT_NEAR(MaxFlow(zero), 0.0, 1e-15);
  FlowNetwork tenth = BuildNetwork(ChainMass(), 0.1);
  EXPECT_NEAR(MaxFlow(tenth), 0.4, 1e-12);
}

// Flow value equals the minimum over element subsets A of the cut
// alpha |not A| + Pl(A).
TEST(MaxFlowTest, EqualsCutEnumeration) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(7));
    absl::StatusOr<MassFunction> m =
        GenerateMass(n, rng.Next(), 1 + static_cast<int>(rng.Below(10)));
    ASSERT_TRUE(m.ok());
    const double alpha = rng.Uniform() * 0.6;
    FlowNetwork net = BuildNetwork(*m, alpha);
    const double flow = MaxFlow(net);
    double best = INFINITY;
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      const SubsetMask a = SubsetMask::FromBits(n, bits);
      best = std::min(best, alpha * (n - a.Count()) + m->Plausibility(a));
    }
    EXPECT_NEAR(flow, best, 1e-12);
  }
}

TEST(MinPlausDensityTest, ChainMassQuarter) {
  absl::StatusOr<SfmResult> r = MinPlausDensity(ChainMass(), 0.25);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->min_value, 0.0, 1e-12);
  EXPECT_EQ(r->maximal_minimizer, SubsetMask::Full(4));
}

TEST(MinPlausDensityTest, SmallAlphaGivesEmptySet) {
  absl::StatusOr<SfmResult> r = MinPlausDensity(ChainMass(), 0.01);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->min_value, 0.0, 1e-12);
  EXPECT_TRUE(r->maximal_minimizer.Empty());
}

TEST(MinPlausDensityTest, RejectsNonpositiveAlpha) {
  EXPECT_FALSE(MinPlausDensity(ChainMass(), 0.0).ok());
}

TEST(MinPlausDensityTest, MatchesBruteForce) {
  Rng rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(9));
    absl::StatusOr<MassFunction> m =
        GenerateMass(n, rng.Next(), 1 + static_cast<int>(rng.Below(15)));
    ASSERT_TRUE(m.ok());
    PlausibilityOracle pl(*m);
    // Half the trials sit exactly on a block density, where minimizers tie.
    double alpha = 0.05 + rng.Uniform() * 0.5;
    if (trial % 2 == 0) {
      absl::StatusOr<DecompositionResult> d = DecompositionChain(pl);
      ASSERT_TRUE(d.ok());
      alpha = d->chain.breakpoints[rng.Below(d->chain.breakpoints.size())];
      if (alpha <= 0.0) continue;
    }
    ShiftedOracle nu(pl, 1.0, alpha);
    absl::StatusOr<SfmResult> brute = BruteForceMin(nu);
    absl::StatusOr<SfmResult> cut = MinPlausDensity(*m, alpha);
    ASSERT_TRUE(brute.ok() && cut.ok());
    EXPECT_NEAR(cut->min_value, brute->min_value, 1e-10);
    EXPECT_EQ(cut->maximal_minimizer, brute->maximal_minimizer)
        << cut->maximal_minimizer.ToString() << " vs "
        << brute->maximal_minimizer.ToString() << " alpha " << alpha;
  }
}

TEST(BeliefUpperEntropyTest, ChainMassIsUniform) {
  absl::StatusOr<EntropyResult> r = BeliefUpperEntropy(ChainMass());
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->method, Method::kMaxFlow);
  EXPECT_LE(MaxAbsDiff(r->p, std::vector<double>(4, 0.25)), 1e-12);
  EXPECT_NEAR(r->entropy, std::log(4.0), 1e-12);
}

TEST(BeliefUpperEntropyTest, VacuousIsUniform) {
  absl::StatusOr<MassFunction> m =
      MassFunction::Create(6, {SubsetMask::Full(6)}, {1.0});
  ASSERT_TRUE(m.ok());
  absl::StatusOr<EntropyResult> r = BeliefUpperEntropy(*m);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->entropy, std::log(6.0), 1e-12);
}

TEST(BeliefUpperEntropyTest, PointMassesAreAdditive) {
  const std::vector<double> p = {0.1, 0.6, 0.3};
  absl::StatusOr<MassFunction> m =
      MassFunction::Create(3, {Set(3, {1}), Set(3, {2}), Set(3, {3})}, p);
  ASSERT_TRUE(m.ok());
  absl::StatusOr<EntropyResult> r = BeliefUpperEntropy(*m);
  ASSERT_TRUE(r.ok());
  EXPECT_LE(MaxAbsDiff(r->p, p), 1e-12);
}

TEST(BeliefUpperEntropyTest, MatchesDecomposition) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.Below(8));
    absl::StatusOr<MassFunction> m = GenerateMass(n, rng.Next(), 8);
    ASSERT_TRUE(m.ok());
    absl::StatusOr<EntropyResult> flow = BeliefUpperEntropy(*m);
    absl::StatusOr<EntropyResult> dec =
        UpperEntropyExact(BeliefOracle(*m), Method::kDecomposition);
    ASSERT_TRUE(flow.ok() && dec.ok());
    EXPECT_NEAR(flow->entropy, dec->entropy, 1e-10);
    EXPECT_LE(MaxAbsDiff(flow->p, dec->p), 1e-10);
  }
}

}  // namespace
}  // namespace upent
