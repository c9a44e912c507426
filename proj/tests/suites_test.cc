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

#include "truthbench/suites.h"

#include "gtest/gtest.h"

namespace truthbench {
namespace {

SuiteOptions Small() {
  SuiteOptions options;
  options.seed = 3;
  options.bonus_count = 30;
  options.max_m = 7;
  options.supports = {8};
  options.probe_combos = 8;
  options.menu_max_m = 6;
  options.bonus_point_fixtures = 2;
  options.bonus_point_max_m = 5;
  return options;
}

void ExpectPassed(const SuiteResult& r) {
  EXPECT_TRUE(r.passed()) << r.name << ": " << r.violations << " of "
                          << r.checks
                          << (r.failures.empty() ? "" : " first: " + r.failures[0]);
  EXPECT_GT(r.cases, 0);
}

TEST(SuitesTest, StructuralSuitesPass) {
  ExpectPassed(BonusStructuralSuite(Small()));
  ExpectPassed(DoublePeakStructuralSuite(Small()));
  ExpectPassed(EncodedStructuralSuite(Small()));
}

TEST(SuitesTest, OracleSuitesPass) {
  ExpectPassed(EncodedOracleSuite(Small()));
  ExpectPassed(ProbeEquivalenceSuite(Small()));
  ExpectPassed(BonusPointSuite(Small()));
}

TEST(SuitesTest, WorkerCountDoesNotChangeResults) {
  SuiteOptions one = Small();
  SuiteOptions four = Small();
  four.workers = 4;
  const SuiteResult a = ProbeEquivalenceSuite(one);
  const SuiteResult b = ProbeEquivalenceSuite(four);
  EXPECT_EQ(a.cases, b.cases);
  EXPECT_EQ(a.checks, b.checks);
  const SuiteResult c = BonusStructuralSuite(one);
  const SuiteResult d = BonusStructuralSuite(four);
  EXPECT_EQ(c.checks, d.checks);
}

TEST(SuitesTest, CodesCoverBothKinds) {
  bool repetition = false, linear = false;
  for (const CodeSpec& code : SuiteCodes(12, Rational(1, 10))) {
    EXPECT_EQ(code.codeword_length(), 6);
    repetition |= code.kind() == CodeKind::kRepetition;
    linear |= code.kind() == CodeKind::kRandomLinear;
  }
  EXPECT_TRUE(repetition);
  EXPECT_TRUE(linear);
}

}  // namespace
}  // namespace truthbench
