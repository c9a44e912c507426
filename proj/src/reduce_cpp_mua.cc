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

#include <algorithm>
#include <numeric>
#include <utility>

#include "truthbench/errors.h"
#include "truthbench/rng.h"
#include "truthbench/valuations.h"

namespace truthbench {
namespace {

double Binomial(int n, int k) {
  double out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

void CheckShape(int universe_size, int k, int d) {
  if (universe_size < 1 || k < 1 || d < 1) {
    throw InputError("cover instances need u, k, d >= 1");
  }
  if (d * k > Bundle::kMaxItems) {
    throw CapExceeded("cover sets", d * k, Bundle::kMaxItems);
  }
}

RegularCoverInstance Skeleton(int universe_size, int k, int d) {
  RegularCoverInstance instance;
  instance.universe_size = universe_size;
  instance.k = k;
  instance.d = d;
  instance.sets.resize(d * k);
  return instance;
}

void SortSets(RegularCoverInstance& instance) {
  for (auto& set : instance.sets) std::sort(set.begin(), set.end());
}

Rational Mean(const Rational& total, int count) {
  Rational out = total / count;
  out.canonicalize();
  return out;
}

}  // namespace

const char* CoverKindName(CoverKind kind) {
  switch (kind) {
    case CoverKind::kUncertified:
      return "uncertified";
    case CoverKind::kYes:
      return "yes";
    case CoverKind::kNo:
      return "no";
  }
  return "?";
}

int RegularCoverInstance::Covered(Bundle chosen) const {
  std::vector<bool> hit(universe_size);
  int count = 0;
  for (int e : chosen.Items()) {
    for (int x : sets[e]) {
      if (!hit[x]) {
        hit[x] = true;
        ++count;
      }
    }
  }
  return count;
}

void RegularCoverInstance::Validate() const {
  if (num_sets() != d * k) throw ContractViolation("cover needs d k sets");
  std::vector<int> degree(universe_size);
  for (const auto& set : sets) {
    for (int x : set) {
      if (x < 0 || x >= universe_size) {
        throw ContractViolation("cover set element outside the universe");
      }
      ++degree[x];
    }
  }
  for (int x = 0; x < universe_size; ++x) {
    if (degree[x] != d) {
      throw ContractViolation("element " + std::to_string(x) + " lies in " +
                              std::to_string(degree[x]) + " sets, not d");
    }
  }
  if (kind == CoverKind::kYes) {
    if (static_cast<int>(witness.size()) != k ||
        Covered(Bundle::FromItems(witness)) != universe_size) {
      throw ContractViolation("YES witness does not cover the universe");
    }
  }
}

RegularCoverInstance BuildRegularYesInstance(int universe_size, int k, int d,
                                             uint64_t seed) {
  CheckShape(universe_size, k, d);
  if (universe_size % k != 0) throw InputError("k must divide u");
  const int part = universe_size / k;
  RegularCoverInstance instance = Skeleton(universe_size, k, d);
  Rng rng(seed);
  std::vector<int> elements(universe_size);
  std::iota(elements.begin(), elements.end(), 0);
  for (int round = 0; round < d; ++round) {
    if (round > 0) rng.Shuffle(elements);
    for (int x = 0; x < universe_size; ++x) {
      instance.sets[round * k + x / part].push_back(elements[x]);
    }
  }
  SortSets(instance);
  instance.kind = CoverKind::kYes;
  for (int e = 0; e < k; ++e) instance.witness.push_back(e);
  instance.Validate();
  return instance;
}

RegularCoverInstance BuildRegularRandomInstance(int universe_size, int k,
                                                int d, uint64_t seed) {
  CheckShape(universe_size, k, d);
  RegularCoverInstance instance = Skeleton(universe_size, k, d);
  Rng rng(seed);
  for (int x = 0; x < universe_size; ++x) {
    for (int e : rng.Sample(d * k, d)) instance.sets[e].push_back(x);
  }
  instance.Validate();
  return instance;
}

CoverCertificate CertifyInstance(const RegularCoverInstance& instance,
                                 const Rational& threshold, double cap) {
  instance.Validate();
  const double count = Binomial(instance.num_sets(), instance.k);
  if (count > cap) throw CapExceeded("cover k-subsets", count, cap);
  CoverCertificate cert;
  cert.max_covered = -1;
  for (Bundle t : KSubsets(instance.num_sets(), instance.k)) {
    const int covered = instance.Covered(t);
    if (covered > cert.max_covered) {
      cert.max_covered = covered;
      cert.best = t;
    }
  }
  if (cert.max_covered == instance.universe_size) {
    cert.verdict = CoverKind::kYes;
  } else if (Rational(cert.max_covered) <=
             threshold * instance.universe_size) {
    cert.verdict = CoverKind::kNo;
  }
  return cert;
}

RegularCoverInstance Certified(RegularCoverInstance instance,
                               const Rational& threshold) {
  const CoverCertificate cert = CertifyInstance(instance, threshold);
  instance.kind = cert.verdict;
  instance.witness.clear();
  instance.certified_max.reset();
  if (cert.verdict == CoverKind::kYes) instance.witness = cert.best.Items();
  if (cert.verdict == CoverKind::kNo) instance.certified_max = cert.max_covered;
  return instance;
}

Rational ComputePm(const CppMechanism& mechanism, int num_items, int k,
                   uint64_t seed, double cap) {
  if (k < 0 || k > num_items) throw InputError("k must lie in [0, m]");
  const double count = Binomial(num_items, k);
  if (count > cap) throw CapExceeded("size-k sets", count, cap);
  Rational total;
  int64_t index = 0;
  for (Bundle a : KSubsets(num_items, k)) {
    std::vector<std::vector<int>> item_sets(num_items);
    for (int e : a.Items()) item_sets[e] = {e};
    const CoverageValuation f(num_items, std::move(item_sets));
    if (auto law = mechanism.FullDistribution(f, k)) {
      for (const WeightedCppOutcome& w : *law) {
        total += w.probability * w.outcome.price;
      }
    } else {
      total += mechanism.Run(f, k, DeriveSeed(seed, index)).price;
    }
    ++index;
  }
  return Mean(total, static_cast<int>(index));
}

Rational InverseE() {
  static const Rational value =
      ParseRational("36787944117144233/100000000000000000");
  return value;
}

Rational CPPConfig::EffectiveEpsilon() const {
  return epsilon > 0 ? epsilon : Rational(c * c / 4);
}

Rational CPPConfig::Low() const {
  if (mode == ThresholdMode::kAdaptive) return no_fraction;
  return 1 - InverseE() + EffectiveEpsilon();
}

Rational CPPConfig::High() const {
  if (mode == ThresholdMode::kAdaptive) return Rational(1);
  return 1 - InverseE() + 2 * EffectiveEpsilon();
}

void CPPConfig::Validate() const {
  if (c <= 0 || c > 1) throw InputError("c must lie in (0, 1]");
  if (EffectiveEpsilon() <= 0) throw InputError("epsilon must be positive");
  if (trials < 1) throw InputError("decision needs trials >= 1");
  if (p_m && *p_m < 0) throw InputError("p_m must be nonnegative");
  if (mode == ThresholdMode::kAdaptive && no_fraction < 0) {
    throw InputError("no_fraction must be nonnegative");
  }
  if (!(Low() < High()) || High() > 1) {
    throw InputError("thresholds must satisfy low < high <= 1");
  }
}

CppDecisionReport CppDecision(const RegularCoverInstance& instance,
                              const CppMechanism& mechanism,
                              const CPPConfig& config) {
  config.Validate();
  if (instance.kind == CoverKind::kUncertified) {
    throw InputError("cpp decision refuses uncertified instances");
  }
  instance.Validate();
  const int sets = instance.num_sets();
  CppDecisionReport report;
  report.p_m = config.p_m ? *config.p_m
                          : ComputePm(mechanism, sets, instance.k,
                                      DeriveSeed(config.seed, 0));
  report.scale = report.p_m > 0 ? report.p_m : Rational(1);
  const Rational full = report.scale * instance.universe_size;
  report.low_value = config.Low() * full;
  report.high_value = config.High() * full;
  report.cutoff = (report.low_value + report.high_value) / 2;
  Rational total;
  for (int t = 0; t < config.trials; ++t) {
    CppTrial trial;
    trial.seed = DeriveSeed(config.seed, t + 1);
    Rng rng(trial.seed);
    trial.permutation.resize(sets);
    std::iota(trial.permutation.begin(), trial.permutation.end(), 0);
    rng.Shuffle(trial.permutation);
    std::vector<std::vector<int>> item_sets(sets);
    for (int e = 0; e < sets; ++e) {
      item_sets[e] = instance.sets[trial.permutation[e]];
    }
    const CoverageValuation f(instance.universe_size, std::move(item_sets),
                              report.scale);
    const auto check_size = [&](Bundle r) {
      if (r.size() != instance.k || !r.WithinGround(sets)) {
        throw ContractViolation("mechanism returned a set of the wrong size");
      }
    };
    if (auto law = mechanism.FullDistribution(f, instance.k)) {
      for (const WeightedCppOutcome& w : *law) {
        check_size(w.outcome.bundle);
        trial.value += w.probability * f.Value(w.outcome.bundle);
        trial.price += w.probability * w.outcome.price;
      }
      trial.returned = law->front().outcome.bundle;
    } else {
      const CppOutcome out = mechanism.Run(f, instance.k, rng.Next());
      check_size(out.bundle);
      trial.returned = out.bundle;
      trial.value = f.Value(out.bundle);
      trial.price = out.price;
    }
    total += trial.value;
    report.trials.push_back(std::move(trial));
  }
  report.mean_value = Mean(total, config.trials);
  report.yes = report.mean_value > report.cutoff;
  return report;
}

MuaReport MuaExtract(const Formula& formula,
                     const MultiUnitMechanism& mechanism, int64_t num_units,
                     int trials, uint64_t seed) {
  if (trials < 1) throw InputError("extraction needs trials >= 1");
  const MultiUnitValuation v = MultiUnitValuation::MakeSatBonus(formula);
  if (v.num_units() != num_units) {
    throw InputError("m must equal 2^vars = " + std::to_string(v.num_units()));
  }
  const MultiUnitValuation u =
      MultiUnitValuation::MakeLinear(Rational(2), v.num_units());
  const Rational target = Rational(2 * num_units + 1);
  MuaReport report;
  for (int t = 0; t < trials; ++t) {
    MuaTrial trial;
    trial.seed = DeriveSeed(seed, t);
    const MultiUnitOutcome out = mechanism.Run(v, u, trial.seed);
    trial.x = out.x;
    trial.welfare = v.Value(out.x) + u.Value(num_units - out.x);
    report.trials.push_back(trial);
    if (trial.welfare == target && out.x < num_units) {
      Assignment x = v.AssignmentOf(out.x);
      if (EvalFormula(formula, x)) {
        report.assignment = std::move(x);
        break;
      }
    }
  }
  return report;
}

Lemma52Report Lemma52Check(const MultiUnitMechanism& mechanism, int64_t x,
                           int64_t num_units, const Rational& epsilon,
                           int trials, uint64_t seed) {
  if (trials < 1) throw InputError("lemma check needs trials >= 1");
  if (x < 0 || x > num_units) throw InputError("x must lie in [0, m]");
  if (num_units > (int64_t{1} << 30)) {
    throw CapExceeded("units", static_cast<double>(num_units), 1 << 30);
  }
  const int m = static_cast<int>(num_units);
  const MultiUnitValuation v1 =
      MultiUnitValuation::MakeSingleMinded(static_cast<int>(x), m);
  const MultiUnitValuation v2 =
      MultiUnitValuation::MakeSingleMinded(static_cast<int>(m - x), m);
  Lemma52Report report;
  report.x = x;
  report.num_units = num_units;
  report.trials = trials;
  report.bound = 2 * epsilon;
  for (int t = 0; t < trials; ++t) {
    if (mechanism.Run(v1, v2, DeriveSeed(seed, t)).x == x) ++report.hits;
  }
  report.empirical_rate = static_cast<double>(report.hits) / trials;
  if (auto law = mechanism.FullDistribution(v1, v2)) {
    Rational p;
    for (const WeightedMultiUnitOutcome& w : *law) {
      if (w.outcome.x == x) p += w.probability;
    }
    report.exact_probability = p;
    report.flagged = p < report.bound;
  } else {
    report.flagged = report.empirical_rate < report.bound.get_d();
  }
  return report;
}

}  // namespace truthbench
