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

#include "truthbench/audit.h"

#include <utility>

#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {

Rational ExpectedUtility(const Mechanism& mechanism, const Instance& instance,
                         int bidder, const Valuation& truth,
                         const AuditOptions& options) {
  auto utility = [&](const Outcome& outcome) -> Rational {
    ValidateOutcome(instance, outcome);
    return truth.Value(outcome.allocation[bidder]) - outcome.payments[bidder];
  };
  if (options.trials == 0) {
    std::optional<OutcomeDistribution> law =
        mechanism.FullDistribution(instance);
    if (!law) {
      throw Unsupported(mechanism.name() +
                        " has no exact distribution; supply a trial budget");
    }
    ValidateDistribution(*law);
    Rational total = 0;
    for (const WeightedOutcome& w : *law) {
      total += w.probability * utility(w.outcome);
    }
    return total;
  }
  if (options.trials < 0) throw InputError("trial budget must be >= 0");
  Rational total = 0;
  for (int t = 0; t < options.trials; ++t) {
    total += utility(mechanism.Run(instance, DeriveSeed(options.seed, t)));
  }
  return total / options.trials;
}

AuditReport AuditTruthfulness(const Mechanism& mechanism,
                              const Instance& instance,
                              const std::vector<ValuationPtr>& misreports,
                              const AuditOptions& options) {
  if (misreports.empty()) throw InputError("misreport family is empty");
  instance.Validate();
  for (const ValuationPtr& v : misreports) {
    if (!v || v->num_items() != instance.num_items) {
      throw InputError("misreport does not match the instance's items");
    }
  }
  AuditReport report;
  report.exact = options.trials == 0;
  const Rational keep = 1 - options.epsilon;
  for (int i = 0; i < instance.num_bidders(); ++i) {
    const Valuation& truth = *instance.valuations[i];
    const Rational truthful =
        ExpectedUtility(mechanism, instance, i, truth, options);
    for (size_t r = 0; r < misreports.size(); ++r) {
      Instance deviated = instance;
      deviated.valuations[i] = misreports[r];
      const Rational deviating =
          ExpectedUtility(mechanism, deviated, i, truth, options);
      ++report.comparisons;
      AuditViolation pair{i, static_cast<int>(r), truthful, deviating};
      if (deviating > 0) {
        Rational ratio = truthful / deviating;
        if (!report.worst_ratio || ratio < *report.worst_ratio) {
          report.worst_ratio = ratio;
          report.worst_pair = pair;
        }
      }
      if (truthful < keep * deviating) report.violations.push_back(pair);
    }
  }
  return report;
}

std::vector<ValuationPtr> RandomMisreportFamily(int num_items, int count,
                                                uint64_t seed) {
  if (num_items < 1) throw InputError("misreport family needs m >= 1");
  std::vector<ValuationPtr> out;
  for (int c = 0; c < count; ++c) {
    Rng rng(DeriveSeed(seed, c));
    switch (c % 4) {
      case 0: {
        std::vector<Rational> values;
        for (int j = 0; j < num_items; ++j) {
          values.emplace_back(static_cast<long>(rng.Uniform(9)), 4);
          values.back().canonicalize();
        }
        out.push_back(std::make_shared<AdditiveValuation>(std::move(values)));
        break;
      }
      case 1:
        out.push_back(SampleRandomPolar(num_items, 2, rng.Next()));
        break;
      case 2: {
        const int universe = 2 + static_cast<int>(rng.Uniform(6));
        std::vector<std::vector<int>> sets(num_items);
        for (auto& set : sets) {
          for (int u = 0; u < universe; ++u) {
            if (rng.Bit()) set.push_back(u);
          }
        }
        Rational scale(1 + static_cast<long>(rng.Uniform(4)), 2);
        scale.canonicalize();
        out.push_back(
            std::make_shared<CoverageValuation>(universe, sets, scale));
        break;
      }
      default: {
        Bundle support;
        while (support.empty()) {
          support = Bundle(rng.Next()) & Bundle::Full(num_items);
        }
        Rational alpha(1 + static_cast<long>(rng.Uniform(4)), 4);
        alpha.canonicalize();
        auto inner = std::make_shared<SymmetricDoublePeak>(num_items, support,
                                                           alpha);
        out.push_back(std::make_shared<ScaledValuation>(
            Rational(1 + static_cast<long>(rng.Uniform(3))), inner));
        break;
      }
    }
  }
  return out;
}

}  // namespace truthbench
