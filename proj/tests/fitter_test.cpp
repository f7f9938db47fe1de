// Copyright 2026 The Playlist Story Builder Authors
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

#include "psb/fitter.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "psb/error.hpp"

namespace psb {
namespace {

const std::vector<double> kY = {0.1, 0.6, 0.8};
const std::vector<double> kZ = {0.5, 0.0, 0.75};

// Permutation-enumeration oracle for threshold feasibility.
bool AnyPermutationWithin(const DeviationMatrix& d, double threshold) {
  std::vector<std::size_t> p(d.n());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < d.n() && ok; ++i) ok = d.at(i, p[i]) <= threshold;
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool IsPermutation(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != k) return false;
  }
  return true;
}

std::vector<double> RandomUnit(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

TEST(DeviationMatrixTest, Entries) {
  const DeviationMatrix d(kY, kZ);
  const double expected[3][3] = {
      {0.4, 0.1, 0.65}, {0.1, 0.6, 0.15}, {0.3, 0.8, 0.05}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(d.at(i, j), expected[i][j], 1e-15);
  }
  EXPECT_EQ(DeviationMatrix({0.5}, {0.5}).at(0, 0), 0.0);
  const DeviationMatrix ends({0.0, 1.0}, {0.0, 1.0});
  EXPECT_EQ(ends.at(0, 0), 0.0);
  EXPECT_EQ(ends.at(0, 1), 1.0);
  EXPECT_EQ(ends.at(1, 0), 1.0);
  EXPECT_EQ(ends.at(1, 1), 0.0);
}

TEST(DeviationMatrixTest, Errors) {
  EXPECT_THROW(DeviationMatrix({0.1, 0.2}, {0.1}), InvalidArgument);
  EXPECT_THROW(DeviationMatrix({}, {}), InvalidArgument);
  EXPECT_THROW(DeviationMatrix({1.5}, {0.1}), InvalidArgument);
}

TEST(ThresholdLadderTest, SortedDedupedAndComplete) {
  const DeviationMatrix d({0.0, 1.0}, {0.0, 1.0});
  EXPECT_EQ(ThresholdLadder(d), (std::vector<double>{0.0, 1.0}));

  std::mt19937_64 rng(1);
  const DeviationMatrix r(RandomUnit(rng, 9), RandomUnit(rng, 9));
  const auto ladder = ThresholdLadder(r);
  EXPECT_TRUE(std::adjacent_find(ladder.begin(), ladder.end(),
                                 std::greater_equal<>()) == ladder.end());
  for (double e : r.entries()) {
    EXPECT_TRUE(std::binary_search(ladder.begin(), ladder.end(), e));
  }
}

TEST(PerfectMatchingTest, Examples) {
  const DeviationMatrix d(kY, kZ);
  EXPECT_TRUE(PerfectMatchingExists(d, 0.8));
  EXPECT_FALSE(PerfectMatchingExists(d, 0.04));
  EXPECT_TRUE(PerfectMatchingExists(d, 0.1));
  EXPECT_THROW(PerfectMatchingExists(d, -1.0), InvalidArgument);

  std::vector<std::size_t> match;
  EXPECT_EQ(MaxThresholdMatching(d, 0.1, &match), 3u);
  EXPECT_EQ(match, (std::vector<std::size_t>{1, 0, 2}));
}

TEST(PerfectMatchingTest, AgreesWithEnumerationAndIsMonotone) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const DeviationMatrix d(RandomUnit(rng, n), RandomUnit(rng, n));
    bool seen_feasible = false;
    for (double t : ThresholdLadder(d)) {
      const bool feasible = PerfectMatchingExists(d, t);
      EXPECT_EQ(feasible, AnyPermutationWithin(d, t));
      if (seen_feasible) {
        EXPECT_TRUE(feasible);
      }
      seen_feasible = seen_feasible || feasible;
    }
    EXPECT_TRUE(seen_feasible);
  }
}

TEST(PerfectMatchingTest, StaircaseThreshold) {
  // Each value can take its own position or the one below it.
  const std::size_t n = 300;
  std::vector<double> y(n), z(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = static_cast<double>(k) / n;
    z[k] = static_cast<double>(k) / n + 0.5 / n;
  }
  const DeviationMatrix d(y, z);
  EXPECT_TRUE(PerfectMatchingExists(d, 0.5 / n + 1e-12));
  EXPECT_FALSE(PerfectMatchingExists(d, 0.5 / n - 1e-12));
}

TEST(FindMinThresholdTest, Examples) {
  EXPECT_EQ(FindMinThreshold(DeviationMatrix(kY, kZ)), 0.1);
  EXPECT_EQ(FindMinThreshold(DeviationMatrix({0.2}, {0.0})), 0.2);
  const std::vector<double> z = {0.9, 0.1, 0.4, 0.7};
  EXPECT_EQ(FindMinThreshold(DeviationMatrix({0.7, 0.4, 0.9, 0.1}, z)), 0.0);
}

TEST(FindMinThresholdTest, MatchesLinearScanAndLiesOnLadder) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const DeviationMatrix d(RandomUnit(rng, n), RandomUnit(rng, n));
    const auto ladder = ThresholdLadder(d);
    const double d_min = FindMinThreshold(d);
    const auto first = std::find_if(ladder.begin(), ladder.end(), [&](double t) {
      return PerfectMatchingExists(d, t);
    });
    ASSERT_NE(first, ladder.end());
    EXPECT_EQ(d_min, *first);
  }
}

TEST(MinCostMatchingTest, Examples) {
  const DeviationMatrix d(kY, kZ);
  const Matching m = MinCostPerfectMatching(d, 0.1);
  EXPECT_EQ(m.pairs(), (std::vector<std::pair<std::size_t, std::size_t>>{
                           {0, 1}, {1, 0}, {2, 2}}));
  double cost = 0;
  for (auto [i, j] : m.pairs()) cost += d.at(i, j);
  EXPECT_NEAR(cost, 0.25, 1e-12);

  const Matching forced = MinCostPerfectMatching(DeviationMatrix({0.2}, {0.0}), 0.2);
  EXPECT_EQ(forced.position_of_value, (std::vector<std::size_t>{0}));

  const Matching exact = MinCostPerfectMatching(
      DeviationMatrix({0.7, 0.4, 0.9, 0.1}, {0.9, 0.1, 0.4, 0.7}), 0.0);
  EXPECT_EQ(exact.position_of_value, (std::vector<std::size_t>{3, 2, 0, 1}));
}

TEST(MinCostMatchingTest, InfeasibleThrows) {
  EXPECT_THROW(MinCostPerfectMatching(DeviationMatrix(kY, kZ), 0.04),
               InfeasibleError);
  // Feasible edges exist for every row but not a perfect matching.
  EXPECT_THROW(MinCostPerfectMatching(
                   DeviationMatrix({0.0, 0.0, 1.0}, {0.0, 1.0, 1.0}), 0.0),
               InfeasibleError);
}

TEST(MinCostMatchingTest, UnrestrictedMatchesEnumeration) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const DeviationMatrix d(RandomUnit(rng, n), RandomUnit(rng, n));
    const Matching m = MinCostPerfectMatching(d, 1.0);
    double cost = 0;
    for (auto [i, j] : m.pairs()) cost += d.at(i, j);

    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    double best = 1e300;
    do {
      double c = 0;
      for (std::size_t i = 0; i < n; ++i) c += d.at(i, p[i]);
      best = std::min(best, c);
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_NEAR(cost, best, 1e-9);
    EXPECT_TRUE(IsPermutation(m.position_of_value));
  }
}

TEST(FitTest, ThreeByThreeExample) {
  const FitResult r = FitToTargets(kY, kZ);
  EXPECT_EQ(r.ordering, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(r.d_min, 0.1);
  EXPECT_NEAR(r.total_cost, 0.25, 1e-12);
}

TEST(FitTest, SingleValue) {
  const FitResult r =
      Fit(std::vector<double>{0.7}, DefaultNarrativeCurve(), {.pre_normalized = true});
  EXPECT_EQ(r.ordering, (std::vector<std::size_t>{0}));
  EXPECT_DOUBLE_EQ(r.d_min, 0.2);
  EXPECT_EQ(r.d_min, std::abs(0.7 - 0.5));
  EXPECT_EQ(r.deviations, (std::vector<double>{r.d_min}));

  // Normalization maps a lone value to 0.5, which sits on the start anchor.
  EXPECT_EQ(Fit(std::vector<double>{120.0}, DefaultNarrativeCurve()).d_min, 0.0);
}

TEST(FitTest, ExactFitRecoversShuffle) {
  const TemplateCurve curve = DefaultNarrativeCurve();
  const std::vector<double> z = SamplePositions(curve, 9);
  std::vector<std::size_t> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(9);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> values(9);
  for (std::size_t k = 0; k < 9; ++k) values[k] = z[perm[k]];

  const FitResult r = Fit(values, curve, {.pre_normalized = true});
  EXPECT_EQ(r.d_min, 0.0);
  EXPECT_EQ(r.total_cost, 0.0);
  for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(perm[r.ordering[j]], j);
}

TEST(FitTest, RejectsBadInput) {
  const TemplateCurve curve = DefaultNarrativeCurve();
  EXPECT_THROW(Fit(std::vector<double>{}, curve), InvalidArgument);
  EXPECT_THROW(Fit(std::vector<double>{1.0, NAN}, curve), InvalidArgument);
  EXPECT_THROW(Fit(std::vector<double>{1.2}, curve, {.pre_normalized = true}),
               InvalidArgument);
}

TEST(FitTest, InvariantsAndDeterminismUnderTies) {
  std::mt19937_64 rng(10);
  const TemplateCurve curve = DefaultNarrativeCurve();
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<double> values(n);
    // Few distinct values so optimal orderings are rarely unique.
    for (double& v : values) v = static_cast<double>(rng() % 4);
    const FitResult a = Fit(values, curve);
    const FitResult b = Fit(values, curve);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(IsPermutation(a.ordering));
    EXPECT_EQ(*std::max_element(a.deviations.begin(), a.deviations.end()),
              a.d_min);
    EXPECT_NEAR(std::accumulate(a.deviations.begin(), a.deviations.end(), 0.0),
                a.total_cost, 1e-9);
  }
}

TEST(BruteForceTest, Examples) {
  const FitResult r = BruteForceFit(kY, kZ);
  EXPECT_EQ(r.ordering, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(r.d_min, 0.1);
  EXPECT_NEAR(r.total_cost, 0.25, 1e-12);

  const std::vector<double> same = {0.3, 0.9, 0.1};
  const FitResult id = BruteForceFit(same, same);
  EXPECT_EQ(id.ordering, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(id.d_min, 0.0);

  const std::vector<double> ends = {0.0, 1.0};
  const std::vector<double> flipped = {1.0, 0.0};
  EXPECT_EQ(BruteForceFit(ends, flipped).ordering,
            (std::vector<std::size_t>{1, 0}));

  // Both orderings cost (0.5, 1.0); the smaller ordering wins the tie.
  const std::vector<double> mid = {0.5, 0.5};
  const FitResult tie = BruteForceFit(ends, mid);
  EXPECT_EQ(tie.ordering, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(tie.d_min, 0.5);

  EXPECT_THROW(BruteForceFit(std::vector<double>(11, 0.5),
                             std::vector<double>(11, 0.5)),
               InvalidArgument);
}

TEST(BruteForceTest, FitMatchesOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto y = RandomUnit(rng, n);
    const auto z = RandomUnit(rng, n);
    const FitResult fast = FitToTargets(y, z);
    const FitResult slow = BruteForceFit(y, z);
    EXPECT_EQ(fast.d_min, slow.d_min);
    EXPECT_NEAR(fast.total_cost, slow.total_cost, 1e-9);
  }
}

// On a line, pairing the k-th smallest value with the k-th smallest target
// minimizes both the largest and the summed deviation. That gives a closed
// form to check against at sizes enumeration can't reach.
TEST(FitTest, MatchesSortedPairingAtScale) {
  std::mt19937_64 rng(13);
  for (const std::size_t n : {50, 200, 600}) {
    for (int rep = 0; rep < 3; ++rep) {
      auto y = RandomUnit(rng, n);
      if (rep == 2) {
        for (double& v : y) v = static_cast<double>(rng() % 7) / 6.0;
      }
      const auto z = RandomUnit(rng, n);
      const FitResult r = FitToTargets(y, z);

      auto ys = y;
      auto zs = z;
      std::sort(ys.begin(), ys.end());
      std::sort(zs.begin(), zs.end());
      double worst = 0.0;
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        worst = std::max(worst, std::abs(ys[k] - zs[k]));
        sum += std::abs(ys[k] - zs[k]);
      }
      EXPECT_EQ(r.d_min, worst) << "n=" << n;
      EXPECT_NEAR(r.total_cost, sum, 1e-9 * static_cast<double>(n));
      EXPECT_TRUE(IsPermutation(r.ordering));
    }
  }
}

}  // namespace
}  // namespace psb
