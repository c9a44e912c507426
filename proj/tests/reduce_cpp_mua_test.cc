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

#include "truthbench/reduce_cpp_mua.h"

#include <memory>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Exact maximizer that charges a price read off the returned set.
class PricedExact : public CppMechanism {
 public:
  explicit PricedExact(bool indicator) : indicator_(indicator) {}
  std::string name() const override { return "priced_exact"; }
  CppOutcome Run(const Valuation& v, int k, uint64_t seed) const override {
    CppOutcome out = CppExact().Run(v, k, seed);
    const int hits = (out.bundle & Bundle(0b11)).size();
    out.price = indicator_ ? Rational(hits > 0 ? 1 : 0) : Rational(hits);
    return out;
  }

 private:
  bool indicator_;
};

class ConstantPrice : public CppMechanism {
 public:
  std::string name() const override { return "constant"; }
  CppOutcome Run(const Valuation& v, int k, uint64_t seed) const override {
    CppOutcome out = CppExact().Run(v, k, seed);
    out.price = Q(7, 3);
    return out;
  }
};

// Returns the first k items whatever the input.
class Oblivious : public CppMechanism {
 public:
  std::string name() const override { return "oblivious"; }
  CppOutcome Run(const Valuation& /*v*/, int k,
                 uint64_t /*seed*/) const override {
    Bundle out;
    for (int e = 0; e < k; ++e) out = out.With(e);
    return {out, Rational(0)};
  }
};

// Brute-force maximum coverage, independent of the certifier.
int SlowMaxCover(const RegularCoverInstance& inst) {
  int best = 0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << inst.num_sets()); ++mask) {
    if (Bundle(mask).size() != inst.k) continue;
    std::set<int> covered;
    for (int e : Bundle(mask).Items()) {
      covered.insert(inst.sets[e].begin(), inst.sets[e].end());
    }
    best = std::max(best, static_cast<int>(covered.size()));
  }
  return best;
}

TEST(RegularCoverTest, YesInstanceExample) {
  const RegularCoverInstance inst = BuildRegularYesInstance(6, 2, 2, 3);
  ASSERT_EQ(inst.num_sets(), 4);
  EXPECT_EQ(inst.sets[0], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(inst.sets[1], (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(inst.witness, (std::vector<int>{0, 1}));
  EXPECT_EQ(inst.kind, CoverKind::kYes);
  std::vector<int> degree(6);
  for (const auto& set : inst.sets) {
    EXPECT_EQ(set.size(), 3u);
    for (int x : set) ++degree[x];
  }
  for (int x : degree) EXPECT_EQ(x, 2);
  EXPECT_THROW(BuildRegularYesInstance(7, 2, 2, 0), InputError);
}

TEST(RegularCoverTest, RegularOnEverySeed) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_NO_THROW(BuildRegularYesInstance(12, 3, 3, seed).Validate());
    EXPECT_NO_THROW(BuildRegularRandomInstance(12, 3, 2, seed).Validate());
  }
  RegularCoverInstance broken = BuildRegularYesInstance(6, 2, 2, 0);
  broken.sets[2].pop_back();
  EXPECT_THROW(broken.Validate(), ContractViolation);
}

TEST(CertifyTest, MatchesSlowMaximum) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const RegularCoverInstance inst = BuildRegularRandomInstance(12, 3, 2, seed);
    const CoverCertificate cert = CertifyInstance(inst, Q(5, 6));
    EXPECT_EQ(cert.max_covered, SlowMaxCover(inst));
    EXPECT_EQ(inst.Covered(cert.best), cert.max_covered);
    if (cert.max_covered == 12) {
      EXPECT_EQ(cert.verdict, CoverKind::kYes);
    } else if (cert.max_covered <= 10) {
      EXPECT_EQ(cert.verdict, CoverKind::kNo);
    } else {
      EXPECT_EQ(cert.verdict, CoverKind::kUncertified);
    }
  }
  const RegularCoverInstance yes = BuildRegularYesInstance(9, 3, 3, 1);
  EXPECT_EQ(CertifyInstance(yes, Q(1)).verdict, CoverKind::kYes);
  EXPECT_EQ(CertifyInstance(yes, Q(1)).max_covered, 9);
  EXPECT_THROW(CertifyInstance(yes, Q(1), 10), CapExceeded);
}

TEST(ComputePmTest, Examples) {
  EXPECT_EQ(ComputePm(CppExact(), 6, 2), Q(0));
  EXPECT_EQ(ComputePm(ConstantPrice(), 5, 2), Q(7, 3));
  // Price |A n {0,1}|: 6 pairs avoid {0,1}, 8 meet it once, 1 contains it.
  EXPECT_EQ(ComputePm(PricedExact(false), 6, 2), Q(10, 15));
  // Price [A meets {0,1}]: 9 of 15 pairs.
  EXPECT_EQ(ComputePm(PricedExact(true), 6, 2), Q(3, 5));
  EXPECT_THROW(ComputePm(CppExact(), 40, 20), CapExceeded);
}

TEST(CppConfigTest, Thresholds) {
  CPPConfig config;
  EXPECT_EQ(config.EffectiveEpsilon(), Q(1, 16));
  EXPECT_NEAR(config.Low().get_d(), 1 - 0.36787944117144233 + 0.0625, 1e-15);
  EXPECT_EQ(config.High() - config.Low(), Q(1, 16));
  config.epsilon = Q(1, 3);
  EXPECT_THROW(config.Validate(), InputError);
  config = CPPConfig();
  config.mode = ThresholdMode::kAdaptive;
  config.no_fraction = Q(5, 6);
  EXPECT_NO_THROW(config.Validate());
  config.no_fraction = Q(1);
  EXPECT_THROW(config.Validate(), InputError);
}

TEST(CppDecisionTest, YesInstancesReachFullCoverage) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const RegularCoverInstance inst = BuildRegularYesInstance(12, 3, 3, seed);
    CPPConfig config;
    config.seed = seed;
    const CppDecisionReport report = CppDecision(inst, CppExact(), config);
    EXPECT_TRUE(report.yes);
    EXPECT_EQ(report.p_m, Q(0));
    EXPECT_EQ(report.scale, Q(1));
    for (const CppTrial& t : report.trials) EXPECT_EQ(t.value, Q(12));
  }
}

TEST(CppDecisionTest, PriceScalesTheValue) {
  const RegularCoverInstance inst = BuildRegularYesInstance(6, 2, 2, 4);
  CPPConfig config;
  config.trials = 3;
  const CppDecisionReport report = CppDecision(inst, ConstantPrice(), config);
  EXPECT_EQ(report.p_m, Q(7, 3));
  EXPECT_EQ(report.mean_value, Q(7 * 6, 3));
  EXPECT_TRUE(report.yes);
}

TEST(CppDecisionTest, NoCertifiedInstancesAreRejected) {
  int no_seen = 0;
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const RegularCoverInstance inst =
        Certified(BuildRegularRandomInstance(12, 3, 2, seed), Q(11, 12));
    if (inst.kind != CoverKind::kNo) continue;
    ++no_seen;
    CPPConfig config;
    config.mode = ThresholdMode::kAdaptive;
    config.no_fraction = Q(11, 12);
    config.seed = seed;
    const CppDecisionReport report = CppDecision(inst, CppExact(), config);
    EXPECT_FALSE(report.yes);
    for (const CppTrial& t : report.trials) {
      EXPECT_EQ(t.value, Q(*inst.certified_max));
    }
  }
  EXPECT_GT(no_seen, 0);
}

TEST(CppDecisionTest, VerdictIgnoresThePermutationSeed) {
  const RegularCoverInstance inst = BuildRegularYesInstance(9, 3, 2, 2);
  CPPConfig config;
  bool first = true;
  bool verdict = false;
  for (uint64_t seed = 0; seed < 8; ++seed) {
    config.seed = seed;
    const bool yes = CppDecision(inst, CppExact(), config).yes;
    if (first) verdict = yes, first = false;
    EXPECT_EQ(yes, verdict);
  }
  // A mechanism that ignores the input can still land on the witness only
  // by chance.
  const CppDecisionReport oblivious = CppDecision(inst, Oblivious(), config);
  EXPECT_LE(oblivious.mean_value, Q(9));
}

TEST(CppDecisionTest, RefusesUncertified) {
  const RegularCoverInstance inst = BuildRegularRandomInstance(6, 2, 2, 1);
  EXPECT_THROW(CppDecision(inst, CppExact(), CPPConfig()), InputError);
}

TEST(MuaExtractTest, RecoversPlantedAssignment) {
  // Only x = 101 satisfies.
  const Formula phi(3, {{1}, {-2}, {3}});
  const MuaReport report = MuaExtract(phi, MidrExact(), 8, 1, 0);
  ASSERT_TRUE(report.assignment.has_value());
  EXPECT_EQ(report.assignment->ToString(), "101");
  ASSERT_EQ(report.trials.size(), 1u);
  EXPECT_EQ(report.trials[0].x, 5);
  EXPECT_EQ(report.trials[0].welfare, Q(17));
  EXPECT_THROW(MuaExtract(phi, MidrExact(), 16, 1, 0), InputError);
  EXPECT_THROW(MuaExtract(phi, MidrExact(), 8, 0, 0), InputError);
}

TEST(MuaExtractTest, UnsatNeverExtracts) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Formula phi = RandomUnsat(4, 30, seed);
    const MuaReport exact = MuaExtract(phi, MidrExact(), 16, 2, seed);
    EXPECT_FALSE(exact.assignment.has_value());
    for (const MuaTrial& t : exact.trials) EXPECT_EQ(t.welfare, Q(32));
    const MuaReport random = MuaExtract(phi, UniformRandomSplit(), 16, 20, seed);
    EXPECT_FALSE(random.assignment.has_value());
  }
}

TEST(MuaExtractTest, RandomSplitFindsTheAssignmentEventually) {
  const Formula phi(3, {{1}, {2}, {-3}});
  const MuaReport report = MuaExtract(phi, UniformRandomSplit(), 8, 200, 3);
  ASSERT_TRUE(report.assignment.has_value());
  EXPECT_TRUE(EvalFormula(phi, *report.assignment));
  EXPECT_EQ(report.trials.back().x, 6);
}

TEST(Lemma52Test, ExactMidrAlwaysHitsAndRandomSplitIsFlagged) {
  for (int64_t x : {0, 3, 8}) {
    const Lemma52Report exact = Lemma52Check(MidrExact(), x, 8, Q(1, 4), 10, 0);
    EXPECT_EQ(exact.hits, 10);
    EXPECT_EQ(exact.exact_probability, Q(1));
    EXPECT_FALSE(exact.flagged);
  }
  const Lemma52Report random =
      Lemma52Check(UniformRandomSplit(), 3, 8, Q(1, 10), 4000, 1);
  EXPECT_EQ(random.exact_probability, Q(1, 9));
  EXPECT_NEAR(random.empirical_rate, 1.0 / 9, 0.02);
  // 1/9 < 2/10.
  EXPECT_TRUE(random.flagged);
  const Lemma52Report loose =
      Lemma52Check(UniformRandomSplit(), 3, 8, Q(1, 20), 10, 1);
  EXPECT_FALSE(loose.flagged);
  EXPECT_THROW(Lemma52Check(MidrExact(), 3, 8, Q(1, 4), 0, 0), InputError);
}

}  // namespace
}  // namespace truthbench
