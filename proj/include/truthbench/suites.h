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

// Exhaustive property and oracle-equivalence suites shared by the command
// line tool and the acceptance binary. Every suite is deterministic given
// its seed and independent of the worker count.

#ifndef TRUTHBENCH_SUITES_H_
#define TRUTHBENCH_SUITES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "truthbench/codes.h"
#include "truthbench/rational.h"

namespace truthbench {

struct SuiteResult {
  std::string name;
  // Valuations, fixtures or (k, p) points examined.
  int64_t cases = 0;
  // Individual comparisons made.
  int64_t checks = 0;
  int64_t violations = 0;
  // The first few failure descriptions.
  std::vector<std::string> failures;

  bool passed() const { return cases > 0 && violations == 0; }
};

struct SuiteOptions {
  uint64_t seed = 0;
  int workers = 1;
  // Bonus valuations: count and the largest m drawn.
  int bonus_count = 200;
  int max_m = 10;
  // Support sizes for the double-peak families.
  std::vector<int> supports = {8, 10, 12};
  std::vector<Rational> alphas = {Rational(1, 2), Rational(1), Rational(2)};
  std::vector<Rational> betas = {Rational(1, 10), Rational(1, 4)};
  // Menu suites: number of fixtures and the largest m.
  int probe_combos = 24;
  int menu_max_m = 8;
  int bonus_point_fixtures = 6;
  int bonus_point_max_m = 6;
};

// Seeded (t, k, P, B) bonus valuations with brute-force-verified monotone P,
// checked for monotonicity and submodularity.
SuiteResult BonusStructuralSuite(const SuiteOptions& options);
// Double-peak and symmetrized double-peak valuations over the alpha, beta
// grid, every even support size up to the largest in `supports`.
SuiteResult DoublePeakStructuralSuite(const SuiteOptions& options);
// Encoded double-peak valuations (unique-SAT and UNSAT formulas,
// repetition and random linear codes).
SuiteResult EncodedStructuralSuite(const SuiteOptions& options);
// Encoded values against the direct double-peak function with the
// partition known to the harness, and against the symmetrized function for
// UNSAT formulas, on every subset.
SuiteResult EncodedOracleSuite(const SuiteOptions& options);
// Probe verdicts against enumerated submenu membership on VCG fixtures.
SuiteResult ProbeEquivalenceSuite(const SuiteOptions& options);
// The bonus bundle is returned whenever the submenu holds one, and the
// strict utility comparisons behind it hold, on two-bidder VCG fixtures.
SuiteResult BonusPointSuite(const SuiteOptions& options);

// The codes the encoded suites use for a given support size.
std::vector<CodeSpec> SuiteCodes(int support, const Rational& beta);

}  // namespace truthbench

#endif  // TRUTHBENCH_SUITES_H_
