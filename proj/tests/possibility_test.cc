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
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "upent/capacity.h"
#include "upent/exact.h"
#include "upent/generate.h"
#include "upent/models.h"
#include "upent/possibility.h"
#include "upent/random.h"
#include "upent/sfm.h"

namespace upent {
namespace {

using ::upent::testing::ThreeOutcomePossibility;
using ::upent::testing::MaxAbsDiff;
using ::upent::testing::Set;

TEST(EnvelopeLinesTest, ThreeOutcomePossibility) {
  absl::StatusOr<std::vector<EnvelopeLine>> lines =
      EnvelopeLines(std::vector<double>{1.0, 0.6, 0.3});
  ASSERT_TRUE(lines.ok());
  ASSERT_EQ(lines->size(), 4u);
  const double intercepts[] = {1.0, 0.6, 0.3, 0.0};
  const int slopes[] = {3, 2, 1, 0};
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ((*lines)[k].j, k + 1);
    EXPECT_EQ((*lines)[k].intercept, intercepts[k]);
    EXPECT_EQ((*lines)[k].slope_count, slopes[k]);
  }
  EXPECT_NEAR((*lines)[0].At(0.1), 0.7, 1e-15);
}

TEST(EnvelopeLinesTest, SingleElement) {
  absl::StatusOr<std::vector<EnvelopeLine>> lines =
      EnvelopeLines(std::vector<double>{1.0});
  ASSERT_TRUE(lines.ok());
  ASSERT_EQ(lines->size(), 2u);
  EXPECT_EQ((*lines)[0].slope_count, 1);
  EXPECT_EQ((*lines)[1].intercept, 0.0);
}

TEST(EnvelopeLinesTest, RejectsNonCanonicalInput) {
  EXPECT_FALSE(EnvelopeLines(std::vector<double>{0.6, 1.0}).ok());
  EXPECT_FALSE(EnvelopeLines(std::vector<double>{0.9, 0.6}).ok());
  EXPECT_FALSE(EnvelopeLines(std::vector<double>{1.0, 0.0}).ok());
  EXPECT_FALSE(UpperHullBreakpoints(std::vector<double>{1.0, 0.3, 0.6}).ok());
}

// min_j g_j(alpha) equals min_A Pi(A) - alpha |A| over all subsets.
TEST(EnvelopeLinesTest, EnvelopeMatchesSubsetScan) {
  Rng rng(41);
  std::vector<std::vector<double>> cases = {{1.0, 1.0, 1.0}};
  for (int t = 0; t < 20; ++t) {
    absl::StatusOr<PossibilityDistribution> pi =
        GeneratePossibility(1 + static_cast<int>(rng.Below(8)), rng.Next());
    cases.push_back(pi->pi());
  }
  for (const std::vector<double>& sorted : cases) {
    const int n = static_cast<int>(sorted.size());
    absl::StatusOr<PossibilityDistribution> pi =
        PossibilityDistribution::Create(sorted);
    ASSERT_TRUE(pi.ok());
    absl::StatusOr<std::vector<EnvelopeLine>> lines = EnvelopeLines(sorted);
    ASSERT_TRUE(lines.ok());
    for (double alpha : {0.0, 0.05, 0.2, 1.0 / 3, 0.5, 0.9, 1.5}) {
      double envelope = INFINITY;
      for (const EnvelopeLine& g : *lines) envelope = std::min(envelope, g.At(alpha));
      double scan = INFINITY;
      for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
        const SubsetMask a = SubsetMask::FromBits(n, bits);
        scan = std::min(scan, pi->Possibility(a) - alpha * a.Count());
      }
      EXPECT_NEAR(envelope, scan, 1e-14) << "alpha " << alpha;
    }
  }
}

TEST(UpperHullBreakpointsTest, ThreeOutcomePossibility) {
  absl::StatusOr<HullBreakpoints> h =
      UpperHullBreakpoints(std::vector<double>{1.0, 0.6, 0.3});
  ASSERT_TRUE(h.ok());
  ASSERT_EQ(h->breakpoints.size(), 2u);
  EXPECT_NEAR(h->breakpoints[0], 0.3, 1e-12);
  EXPECT_NEAR(h->breakpoints[1], 0.4, 1e-12);
  EXPECT_EQ(h->suffix_starts, (std::vector<int>{2, 1}));
  ASSERT_FALSE(h->hull.empty());
  EXPECT_EQ(h->hull.back().x, 0.0);
  EXPECT_EQ(h->hull.back().y, 0.0);
  EXPECT_LE(h->stack_operations, 2 * 4);
}

TEST(UpperHullBreakpointsTest, AllOnes) {
  for (int n = 1; n <= 6; ++n) {
    absl::StatusOr<HullBreakpoints> h =
        UpperHullBreakpoints(std::vector<double>(n, 1.0));
    ASSERT_TRUE(h.ok());
    ASSERT_EQ(h->breakpoints.size(), 1u) << n;
    EXPECT_NEAR(h->breakpoints[0], 1.0 / n, 1e-15);
    EXPECT_EQ(h->suffix_starts, (std::vector<int>{1}));
  }
}

TEST(UpperHullBreakpointsTest, SingleElement) {
  absl::StatusOr<HullBreakpoints> h =
      UpperHullBreakpoints(std::vector<double>{1.0});
  ASSERT_TRUE(h.ok());
  EXPECT_EQ(h->breakpoints, (std::vector<double>{1.0}));
  EXPECT_EQ(h->suffix_starts, (std::vector<int>{1}));
}

// Between consecutive breakpoints the suffix read off the hull is the
// maximal minimizer of Pi(A) - alpha |A|.
TEST(UpperHullBreakpointsTest, SuffixesAreMaximalMinimizers) {
  Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng.Below(9));
    absl::StatusOr<PossibilityDistribution> pi = GeneratePossibility(n, rng.Next());
    ASSERT_TRUE(pi.ok());
    const std::vector<double>& sorted = pi->pi();
    absl::StatusOr<HullBreakpoints> h = UpperHullBreakpoints(sorted);
    ASSERT_TRUE(h.ok());
    EXPECT_LE(h->stack_operations, 2 * (n + 1));
    for (size_t k = 1; k < h->breakpoints.size(); ++k) {
      EXPECT_GT(h->breakpoints[k], h->breakpoints[k - 1]);
      EXPECT_LT(h->suffix_starts[k], h->suffix_starts[k - 1]);
    }
    PossibilityOracle poss(*pi);
    auto maximal_at = [&](double alpha) {
      ShiftedOracle nu(poss, 1.0, alpha);
      return BruteForceMin(nu, 1e-13)->maximal_minimizer;
    };
    EXPECT_TRUE(maximal_at(0.5 * h->breakpoints[0]).Empty());
    const size_t m = h->breakpoints.size();
    for (size_t k = 0; k < m; ++k) {
      SubsetMask suffix(n);
      for (int j = h->suffix_starts[k]; j <= n; ++j) suffix.Insert(j - 1);
      const double next = k + 1 < m ? h->breakpoints[k + 1] : h->breakpoints[k] + 1.0;
      // The larger suffix wins the tie at its breakpoint.
      EXPECT_EQ(maximal_at(h->breakpoints[k]), suffix);
      EXPECT_EQ(maximal_at(0.5 * (h->breakpoints[k] + next)), suffix);
    }
  }
}

TEST(PossibilityUpperEntropyTest, ThreeOutcomePossibility) {
  HullBreakpoints hull;
  absl::StatusOr<EntropyResult> r = PossibilityUpperEntropy(ThreeOutcomePossibility(), &hull);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->method, Method::kHull);
  EXPECT_LE(MaxAbsDiff(r->p, std::vector<double>{0.4, 0.3, 0.3}), 1e-12);
  EXPECT_NEAR(r->entropy, 1.0888999753452238, 1e-12);
  ASSERT_TRUE(r->chain.has_value());
  ASSERT_EQ(r->chain->sets.size(), 2u);
  EXPECT_EQ(r->chain->sets[0], Set(3, {2, 3}));
  EXPECT_EQ(r->chain->sets[1], SubsetMask::Full(3));
  EXPECT_EQ(hull.suffix_starts, (std::vector<int>{2, 1}));
}

TEST(PossibilityUpperEntropyTest, VacuousIsUniform) {
  absl::StatusOr<PossibilityDistribution> pi =
      PossibilityDistribution::Create(std::vector<double>(7, 1.0));
  absl::StatusOr<EntropyResult> r = PossibilityUpperEntropy(*pi);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->entropy, std::log(7.0), 1e-12);
}

TEST(PossibilityUpperEntropyTest, NearZeroTails) {
  absl::StatusOr<PossibilityDistribution> pi =
      PossibilityDistribution::Create({1.0, 1e-9, 1e-9, 0.5e-9, 1e-10});
  ASSERT_TRUE(pi.ok());
  absl::StatusOr<EntropyResult> r = PossibilityUpperEntropy(*pi);
  absl::StatusOr<EntropyResult> dec =
      UpperEntropyExact(NecessityOracle(*pi), Method::kDecomposition);
  ASSERT_TRUE(r.ok() && dec.ok());
  EXPECT_LE(MaxAbsDiff(r->p, dec->p), 1e-8);
  EXPECT_TRUE(*CheckMembership(NecessityOracle(*pi), r->p, 1e-12));
  EXPECT_GT(r->p[0], 0.999);
}

TEST(PossibilityUpperEntropyTest, ZeroDegreesGetZeroProbability) {
  absl::StatusOr<PossibilityDistribution> pi =
      PossibilityDistribution::Create({0.0, 1.0, 0.4, 0.0});
  ASSERT_TRUE(pi.ok());
  absl::StatusOr<EntropyResult> r = PossibilityUpperEntropy(*pi);
  absl::StatusOr<EntropyResult> brute = BruteForceChainOracle(NecessityOracle(*pi));
  ASSERT_TRUE(r.ok() && brute.ok());
  EXPECT_EQ(r->p[0], 0.0);
  EXPECT_EQ(r->p[3], 0.0);
  EXPECT_LE(MaxAbsDiff(r->p, brute->p), 1e-12);
  ASSERT_TRUE(r->chain.has_value());
  EXPECT_EQ(r->chain->sets[0], Set(4, {1, 4}));
  EXPECT_EQ(r->chain->breakpoints[0], 0.0);
  EXPECT_TRUE(ValidateChain(*r->chain, 4).ok());
}

// Unsorted labels, ties and random degrees against the generic solvers.
TEST(PossibilityUpperEntropyTest, MatchesGenericSolvers) {
  Rng rng(47);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + static_cast<int>(rng.Below(10));
    std::vector<double> degrees(n);
    for (double& d : degrees) {
      d = rng.Below(4) == 0 ? 0.5 : rng.UniformPositive();
    }
    degrees[rng.Below(n)] = 1.0;
    absl::StatusOr<PossibilityDistribution> pi =
        PossibilityDistribution::Create(degrees, /*renormalize=*/true);
    ASSERT_TRUE(pi.ok());
    NecessityOracle mu(*pi);
    absl::StatusOr<EntropyResult> r = PossibilityUpperEntropy(*pi);
    absl::StatusOr<EntropyResult> dec = UpperEntropyExact(mu, Method::kDecomposition);
    ASSERT_TRUE(r.ok() && dec.ok());
    EXPECT_NEAR(r->entropy, dec->entropy, 1e-10);
    EXPECT_LE(MaxAbsDiff(r->p, dec->p), 1e-10);
    if (n <= 7) {
      absl::StatusOr<EntropyResult> brute = BruteForceChainOracle(mu);
      ASSERT_TRUE(brute.ok());
      EXPECT_LE(MaxAbsDiff(r->p, brute->p), 1e-10);
    }
  }
}

}  // namespace
}  // namespace upent
