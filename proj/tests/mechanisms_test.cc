// Copyright 2026 The Truthbench Authors.
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

#include "truthbench/mechanisms.h"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "truthbench/audit.h"
#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

ValuationPtr Additive(std::vector<Rational> values) {
  return std::make_shared<AdditiveValuation>(std::move(values));
}

// Independent welfare oracle: recursion over every assignment of items to
// bidders or to nobody, in rationals.
Rational BruteWelfare(const std::vector<ValuationPtr>& vs, int m,
                      Bundle available) {
  Rational best = 0;
  std::vector<Bundle> bundles(vs.size());
  std::function<void(int)> go = [&](int j) {
    if (j == m) {
      Rational total = 0;
      for (size_t i = 0; i < vs.size(); ++i) total += vs[i]->Value(bundles[i]);
      if (total > best) best = total;
      return;
    }
    go(j + 1);
    if (!available.Contains(j)) return;
    for (size_t i = 0; i < vs.size(); ++i) {
      bundles[i] = bundles[i].With(j);
      go(j + 1);
      bundles[i] = bundles[i].Without(j);
    }
  };
  go(0);
  return best;
}

Instance RandomInstance(int m, int n, uint64_t seed) {
  Instance instance{m, {}};
  std::vector<ValuationPtr> pool = RandomMisreportFamily(m, 4 * n, seed);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    instance.valuations.push_back(pool[rng.Uniform(pool.size())]);
  }
  return instance;
}

TEST(VcgTest, Examples) {
  VcgMechanism vcg;
  Instance a{2, {Additive({Q(3), Q(0)}), Additive({Q(0), Q(5)})}};
  Outcome out = vcg.Run(a, 0);
  EXPECT_EQ(out.allocation, (std::vector<Bundle>{Bundle{0}, Bundle{1}}));
  EXPECT_EQ(out.payments, (std::vector<Rational>{Q(0), Q(0)}));

  Instance b{2, {Additive({Q(3), Q(4)}), Additive({Q(5), Q(1)})}};
  VcgSolution sol = vcg.Solve(b);
  EXPECT_EQ(sol.outcome.allocation, (std::vector<Bundle>{Bundle{1}, Bundle{0}}));
  EXPECT_EQ(sol.welfare, 9);
  EXPECT_EQ(sol.outcome.payments, (std::vector<Rational>{Q(1), Q(3)}));

  Instance single{3, {Additive({Q(1), Q(2), Q(3)})}};
  out = vcg.Run(single, 0);
  EXPECT_EQ(out.allocation[0], Bundle::Full(3));
  EXPECT_EQ(out.payments[0], 0);
}

TEST(VcgTest, MatchesBruteForceOracle) {
  VcgMechanism vcg;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const int m = 1 + static_cast<int>(seed % 5);
    const int n = 1 + static_cast<int>(seed % 3);
    Instance instance = RandomInstance(m, n, seed);
    VcgSolution sol = vcg.Solve(instance);
    const Bundle full = Bundle::Full(m);
    EXPECT_EQ(sol.welfare, BruteWelfare(instance.valuations, m, full));
    EXPECT_EQ(Welfare(instance, sol.outcome), sol.welfare);
    for (int i = 0; i < n; ++i) {
      std::vector<ValuationPtr> others = instance.valuations;
      others.erase(others.begin() + i);
      Rational others_here =
          sol.welfare - instance.valuations[i]->Value(sol.outcome.allocation[i]);
      EXPECT_EQ(sol.outcome.payments[i],
                BruteWelfare(others, m, full) - others_here);
      EXPECT_GE(sol.outcome.payments[i], 0);
      EXPECT_LE(sol.outcome.payments[i],
                instance.valuations[i]->Value(sol.outcome.allocation[i]));
    }
  }
}

TEST(VcgTest, TiesGoToLexicographicallyFirstOwnerVector) {
  // Identical bidders: owner vector (0, 0) is first among the optima.
  Instance instance{2, {Additive({Q(1), Q(1)}), Additive({Q(1), Q(1)})}};
  VcgSolution sol = VcgMechanism().Solve(instance);
  EXPECT_EQ(sol.outcome.allocation[0], Bundle::Full(2));
  EXPECT_EQ(sol.optimal_allocations, 4);
}

TEST(VcgTest, CapIsEnforced) {
  Instance instance = RandomInstance(6, 3, 1);
  EXPECT_THROW(VcgMechanism(100).Run(instance, 0), CapExceeded);
}

TEST(VcgTest, DeterministicAcrossRuns) {
  Instance instance = RandomInstance(5, 3, 8);
  VcgMechanism vcg;
  EXPECT_EQ(vcg.Run(instance, 1), vcg.Run(instance, 2));
}

TEST(MaxWelfareTest, MatchesBruteForce) {
  Instance instance = RandomInstance(5, 2, 3);
  std::vector<Rational> table =
      MaxWelfareByAvailableSet(instance.valuations, 5);
  for (uint64_t mask = 0; mask < 32; ++mask) {
    EXPECT_EQ(table[mask], BruteWelfare(instance.valuations, 5, Bundle(mask)));
  }
}

TEST(GreedyTest, SingleBidderGetsEverything) {
  Instance instance{3, {Additive({Q(1), Q(0), Q(2)})}};
  EXPECT_EQ(GreedyMechanism().Run(instance, 0).allocation[0], Bundle::Full(3));
}

TEST(GreedyTest, OptimalForAdditiveBidders) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Instance instance{5, {}};
    for (int i = 0; i < 3; ++i) {
      std::vector<Rational> values;
      for (int j = 0; j < 5; ++j) values.emplace_back(rng.Uniform(10));
      instance.valuations.push_back(Additive(values));
    }
    EXPECT_EQ(Welfare(instance, GreedyMechanism().Run(instance, 0)),
              VcgMechanism().Solve(instance).welfare);
  }
}

TEST(GreedyTest, HalfApproximationOnSubmodularInstances) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const int m = 2 + static_cast<int>(seed % 5);
    Instance instance = RandomInstance(m, 2, 100 + seed);
    Rational greedy = Welfare(instance, GreedyMechanism().Run(instance, 0));
    EXPECT_GE(2 * greedy, VcgMechanism().Solve(instance).welfare);
  }
}

TEST(DictatorTest, GivesEverythingForFree) {
  Instance instance = RandomInstance(4, 3, 2);
  Outcome out = DictatorMechanism(1).Run(instance, 0);
  EXPECT_EQ(out.allocation[1], Bundle::Full(4));
  EXPECT_TRUE(out.allocation[0].empty());
  EXPECT_EQ(out.payments[1], 0);
  EXPECT_THROW(DictatorMechanism(3).Run(instance, 0), InputError);
}

TEST(MakeMechanismTest, Names) {
  EXPECT_EQ(MakeMechanism("vcg")->name(), "vcg");
  EXPECT_EQ(MakeMechanism("dictator:2")->name(), "dictator:2");
  EXPECT_THROW(MakeMechanism("dictator:x"), InputError);
  EXPECT_THROW(MakeMechanism("nope"), InputError);
}

TEST(CppExactTest, Examples) {
  CppExact cpp;
  CoverageValuation dominant(6, {{0}, {0, 1, 2, 3, 4, 5}, {1, 2}});
  EXPECT_EQ(cpp.Run(dominant, 1, 0).bundle, Bundle{1});

  PolarAdditiveValuation hits(6, Bundle{1, 3, 4}, Q(1, 1000000));
  AdditiveValuation indicator({Q(0), Q(1), Q(0), Q(1), Q(1), Q(0)});
  EXPECT_EQ(cpp.Run(indicator, 3, 0).bundle, (Bundle{1, 3, 4}));

  DoublePeakValuation peak(6, Bundle{0, 1, 2}, Bundle{3, 4, 5}, Q(1),
                           Q(1, 10));
  CppOutcome out = cpp.Run(peak, 3, 0);
  EXPECT_TRUE(out.bundle == (Bundle{0, 1, 2}) || out.bundle == (Bundle{3, 4, 5}));
  EXPECT_EQ(peak.Value(out.bundle), Q(381, 400));
  EXPECT_EQ(out.price, 0);
}

TEST(MidrTest, SingleMindedPairGetsTheirSplit) {
  MidrExact midr;
  for (int x = 0; x <= 8; ++x) {
    auto v1 = MultiUnitValuation::MakeSingleMinded(x, 8);
    auto v2 = MultiUnitValuation::MakeSingleMinded(8 - x, 8);
    MultiUnitOutcome out = midr.Run(v1, v2, 0);
    EXPECT_EQ(out.x, x);
    EXPECT_EQ(v1.Value(out.x) + v2.Value(8 - out.x), 2);
  }
}

TEST(MidrTest, SatBonusAgainstLinear) {
  MidrExact midr;
  auto linear = MultiUnitValuation::MakeLinear(Q(2), 8);
  auto sat = MultiUnitValuation::MakeSatBonus(Formula(3, {{1}, {-2}, {3}}));
  MultiUnitOutcome out = midr.Run(sat, linear, 0);
  EXPECT_EQ(out.x, 5);
  EXPECT_EQ(sat.Value(5) + linear.Value(3), 17);

  auto unsat = MultiUnitValuation::MakeSatBonus(Formula(3, {{1}, {-1}}));
  out = midr.Run(unsat, linear, 0);
  EXPECT_EQ(out.x, 0);
  EXPECT_EQ(unsat.Value(0) + linear.Value(8), 16);
}

TEST(MidrTest, PaymentsAreClarkePivotOverSplits) {
  MidrExact midr;
  auto v1 = MultiUnitValuation::MakeSingleMinded(3, 4);
  auto v2 = MultiUnitValuation::MakeLinear(Q(1, 2), 4);
  // Splits x = 0..4 have welfare 2, 3/2, 1, 3/2, 1: x = 0 wins.
  MultiUnitOutcome out = midr.Run(v1, v2, 0);
  EXPECT_EQ(out.x, 0);
  EXPECT_EQ(out.payment1, 0);
  EXPECT_EQ(out.payment2, 1);
}

TEST(UniformRandomSplitTest, ExactLawIsUniform) {
  UniformRandomSplit split;
  auto v = MultiUnitValuation::MakeLinear(Q(1), 7);
  auto law = split.FullDistribution(v, v);
  ASSERT_TRUE(law.has_value());
  ASSERT_EQ(law->size(), 8u);
  Rational total = 0;
  for (const auto& w : *law) {
    EXPECT_EQ(w.probability, Q(1, 8));
    total += w.probability;
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(split.Run(v, v, 42), split.Run(v, v, 42));
}

TEST(AuditTest, VcgHasNoViolations) {
  for (uint64_t seed = 0; seed < 4; ++seed) {
    Instance instance = RandomInstance(3 + static_cast<int>(seed % 2), 2, seed);
    AuditReport report = AuditTruthfulness(
        VcgMechanism(), instance, RandomMisreportFamily(instance.num_items, 12, seed),
        AuditOptions{});
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.comparisons, 24);
    if (report.worst_ratio) EXPECT_GE(*report.worst_ratio, 1);
  }
}

TEST(AuditTest, GreedyNegativeControlIsCaught) {
  Instance instance{2, {Additive({Q(1), Q(0)}), Additive({Q(2), Q(0)})}};
  AuditReport report = AuditTruthfulness(GreedyMechanism(), instance,
                                         {Additive({Q(3), Q(0)})},
                                         AuditOptions{});
  ASSERT_FALSE(report.passed());
  EXPECT_EQ(report.violations[0].bidder, 0);
  EXPECT_EQ(report.violations[0].truthful_utility, 0);
  EXPECT_EQ(report.violations[0].misreport_utility, 1);
}

TEST(AuditTest, TruthfulReportInFamilyGivesRatioOne) {
  Instance instance{2, {Additive({Q(1), Q(2)}), Additive({Q(2), Q(1)})}};
  AuditReport report = AuditTruthfulness(GreedyMechanism(), instance,
                                         {instance.valuations[0]},
                                         AuditOptions{});
  ASSERT_TRUE(report.worst_ratio.has_value());
  EXPECT_EQ(*report.worst_ratio, 1);
}

TEST(AuditTest, EmptyFamilyIsInputError) {
  Instance instance{1, {Additive({Q(1)})}};
  EXPECT_THROW(AuditTruthfulness(VcgMechanism(), instance, {}, AuditOptions{}),
               InputError);
}

TEST(AuditTest, MonteCarloMatchesExactForDeterministicMechanism) {
  Instance instance = RandomInstance(3, 2, 5);
  auto family = RandomMisreportFamily(3, 4, 5);
  AuditOptions sampled;
  sampled.trials = 3;
  AuditReport a = AuditTruthfulness(VcgMechanism(), instance, family, {});
  AuditReport b = AuditTruthfulness(VcgMechanism(), instance, family, sampled);
  EXPECT_FALSE(b.exact);
  EXPECT_EQ(a.worst_ratio, b.worst_ratio);
}

}  // namespace
}  // namespace truthbench
