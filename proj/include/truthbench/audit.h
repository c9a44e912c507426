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

#ifndef TRUTHBENCH_AUDIT_H_
#define TRUTHBENCH_AUDIT_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "truthbench/mechanisms.h"
#include "truthbench/rational.h"
#include "truthbench/valuations.h"

namespace truthbench {

struct AuditOptions {
  Rational epsilon = 0;
  // 0 means exact expectations, which requires FullDistribution. Otherwise
  // expectations are sample means over seeds DeriveSeed(seed, trial).
  int trials = 0;
  uint64_t seed = 0;
};

struct AuditViolation {
  int bidder = 0;
  // Index into the misreport family.
  int misreport = 0;
  Rational truthful_utility;
  Rational misreport_utility;
};

struct AuditReport {
  bool exact = true;
  int64_t comparisons = 0;
  // min truthful / misreport utility over pairs with positive misreport
  // utility; empty if there were none.
  std::optional<Rational> worst_ratio;
  std::optional<AuditViolation> worst_pair;
  std::vector<AuditViolation> violations;

  bool passed() const { return violations.empty(); }
};

// E[v(S_bidder) - p_bidder] when `instance` is reported and `truth` is the
// bidder's real valuation.
Rational ExpectedUtility(const Mechanism& mechanism, const Instance& instance,
                         int bidder, const Valuation& truth,
                         const AuditOptions& options);

// For every bidder i and every v' in `misreports`, checks
// E[u_i(truth)] >= (1 - epsilon) E[u_i(v', v_-i)].
AuditReport AuditTruthfulness(const Mechanism& mechanism,
                              const Instance& instance,
                              const std::vector<ValuationPtr>& misreports,
                              const AuditOptions& options);

// Mixed family of additive, polar, coverage and symmetric double-peak
// valuations over m items.
std::vector<ValuationPtr> RandomMisreportFamily(int num_items, int count,
                                                uint64_t seed);

}  // namespace truthbench

#endif  // TRUTHBENCH_AUDIT_H_
