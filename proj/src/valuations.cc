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

#include "truthbench/valuations.h"

#include <iostream>
#include <string>
#include <utility>

#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

// Depth of bonus evaluations on the current thread. A predicate that runs a
// mechanism must never feed it another bonus valuation.
thread_local int bonus_depth = 0;

class DepthGuard {
 public:
  DepthGuard() {
    if (bonus_depth > 0) {
      throw ContractViolation(
          "bonus valuation evaluated from inside a bonus predicate");
    }
    ++bonus_depth;
  }
  ~DepthGuard() { --bonus_depth; }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;
};

void RequireGround(Bundle s, int m, const char* what) {
  if (!s.WithinGround(m)) {
    throw InputError(std::string(what) + " " + s.ToString() +
                     " is outside the ground set of size " +
                     std::to_string(m));
  }
}

void RequireNonnegative(const Rational& r, const char* what) {
  if (r < 0) throw InputError(std::string(what) + " must be nonnegative");
}

void RequirePositive(const Rational& r, const char* what) {
  if (r <= 0) throw InputError(std::string(what) + " must be positive");
}

}  // namespace

Valuation::Valuation(int num_items) : num_items_(num_items) {
  if (num_items < 0 || num_items > Bundle::kMaxItems) {
    throw InputError("number of items must lie in [0, 64], got " +
                     std::to_string(num_items));
  }
}

Rational Valuation::Value(Bundle s) const {
  RequireGround(s, num_items_, "bundle");
  return Evaluate(s);
}

AdditiveValuation::AdditiveValuation(std::vector<Rational> per_item)
    : Valuation(static_cast<int>(per_item.size())),
      per_item_(std::move(per_item)) {
  for (const Rational& r : per_item_) RequireNonnegative(r, "item value");
}

Rational AdditiveValuation::Evaluate(Bundle s) const {
  Rational total = 0;
  for (int j : s.Items()) total += per_item_[j];
  return total;
}

PolarAdditiveValuation::PolarAdditiveValuation(int num_items, Bundle high_set,
                                               Rational omega)
    : Valuation(num_items), high_set_(high_set), omega_(std::move(omega)) {
  RequireGround(high_set, num_items, "high set");
  RequirePositive(omega_, "omega");
}

Rational PolarAdditiveValuation::DefaultOmega(int num_items) {
  return InversePower(num_items, 3);
}

std::vector<Rational> PolarAdditiveValuation::PerItem() const {
  std::vector<Rational> out(num_items(), omega_);
  for (int j : high_set_.Items()) out[j] = 1;
  return out;
}

Rational PolarAdditiveValuation::Evaluate(Bundle s) const {
  return Rational((s & high_set_).size()) +
         omega_ * (s - high_set_).size();
}

std::shared_ptr<const PolarAdditiveValuation> SampleRandomPolar(
    int num_items, int num_bidders, uint64_t seed, PolarSampling sampling) {
  if (num_items < 1 || num_bidders < 1) {
    throw InputError("random polar valuation needs m, n >= 1");
  }
  Rng rng(seed);
  Bundle high;
  if (sampling == PolarSampling::kBernoulli) {
    for (int j = 0; j < num_items; ++j) {
      if (rng.Uniform(num_bidders) == 0) high = high.With(j);
    }
  } else {
    std::vector<int> chosen = rng.Sample(num_items, num_items / num_bidders);
    high = Bundle::FromItems(chosen);
  }
  return std::make_shared<PolarAdditiveValuation>(
      num_items, high, PolarAdditiveValuation::DefaultOmega(num_items));
}

TruthTablePredicate::TruthTablePredicate(int num_items, std::vector<bool> table)
    : num_items_(num_items), table_(std::move(table)) {
  if (num_items < 0 || num_items > 20) {
    throw InputError("truth tables are limited to 20 items");
  }
  if (table_.size() != (size_t{1} << num_items)) {
    throw InputError("truth table must have 2^m entries");
  }
}

bool TruthTablePredicate::operator()(Bundle s) const {
  RequireGround(s, num_items_, "bundle");
  return table_[s.mask()];
}

std::string TruthTablePredicate::Description() const {
  std::string out = "table:";
  for (bool b : table_) out.push_back(b ? '1' : '0');
  return out;
}

PredicatePtr UpClosurePredicate(std::vector<Bundle> generators) {
  std::string description = "upclosure:";
  for (size_t i = 0; i < generators.size(); ++i) {
    if (i > 0) description += ";";
    description += generators[i].ToString();
  }
  return std::make_shared<FunctionPredicate>(
      [gens = std::move(generators)](Bundle s) {
        for (Bundle g : gens) {
          if (g.IsSubsetOf(s)) return true;
        }
        return false;
      },
      description);
}

bool IsMonotonePredicate(const BundlePredicate& predicate, int num_items) {
  if (num_items > 24) {
    throw CapExceeded("predicate monotonicity check items", num_items, 24);
  }
  const uint64_t count = uint64_t{1} << num_items;
  std::vector<bool> table(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    table[mask] = predicate(Bundle(mask));
  }
  for (uint64_t mask = 0; mask < count; ++mask) {
    if (!table[mask]) continue;
    for (int j = 0; j < num_items; ++j) {
      if (!table[mask | (uint64_t{1} << j)]) return false;
    }
  }
  return true;
}

BonusValuation::BonusValuation(int num_items, Rational t, int k,
                               PredicatePtr menu, PredicatePtr bonus,
                               Options options)
    : Valuation(num_items),
      t_(std::move(t)),
      k_(k),
      menu_(std::move(menu)),
      bonus_(std::move(bonus)) {
  RequirePositive(t_, "t");
  if (k < 1 || k > num_items) {
    throw InputError("bonus k must lie in [1, m], got " + std::to_string(k));
  }
  if (!menu_ || !bonus_) throw InputError("bonus predicates must be set");
  if (!options.validate_monotone) return;
  if (num_items > kMonotoneCheckCap) {
    std::cerr << "WARNING: menu predicate monotonicity not verified for m = "
              << num_items << " (cap " << kMonotoneCheckCap << ")\n";
    return;
  }
  const uint64_t count = uint64_t{1} << num_items;
  for (uint64_t mask = 0; mask < count; ++mask) {
    if (!P(Bundle(mask))) continue;
    for (int j = 0; j < num_items; ++j) {
      Bundle larger(mask | (uint64_t{1} << j));
      if (!P(larger)) {
        throw InputError("menu predicate is not monotone: P(" +
                         Bundle(mask).ToString() + ") = 1 but P(" +
                         larger.ToString() + ") = 0");
      }
    }
  }
}

Rational BonusValuation::BonusGap(int num_items) {
  return InversePower(num_items, 4);
}

bool BonusValuation::Memoized(const BundlePredicate& predicate,
                              std::unordered_map<uint64_t, bool>& memo,
                              Bundle s) const {
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo.find(s.mask());
    if (it != memo.end()) return it->second;
  }
  bool answer;
  {
    DepthGuard guard;
    answer = predicate(s);
  }
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo.emplace(s.mask(), answer);
  return answer;
}

bool BonusValuation::P(Bundle s) const {
  return Memoized(*menu_, menu_memo_, s);
}

bool BonusValuation::B(Bundle s) const {
  return Memoized(*bonus_, bonus_memo_, s);
}

BonusValuation::Case BonusValuation::Classify(Bundle s) const {
  const int size = s.size();
  if (size < k_) return Case::kBelowK;
  if (!P(s)) return Case::kNoMenu;
  if (size > k_) return Case::kAboveKOnMenu;
  return B(s) ? Case::kMenuBonus : Case::kMenuNoBonus;
}

Rational BonusValuation::Evaluate(Bundle s) const {
  const int size = s.size();
  switch (Classify(s)) {
    case Case::kBelowK:
      return t_ * size;
    case Case::kNoMenu:
      return (Rational(k_) - InversePower(2, size)) * t_;
    case Case::kMenuNoBonus:
      return t_ * k_ - BonusGap(num_items());
    case Case::kMenuBonus:
    case Case::kAboveKOnMenu:
      return t_ * k_;
  }
  throw ContractViolation("unreachable bonus case");
}

Rational PsiTilde(const Rational& x, const Rational& y, const Rational& alpha,
                  const Rational& beta) {
  if (x < 0 || x > 1 || y < 0 || y > 1) {
    throw InputError("psi arguments must lie in [0, 1]");
  }
  RequirePositive(alpha, "alpha");
  RequirePositive(beta, "beta");
  const Rational two_alpha = 2 * alpha;
  const Rational diff = x - y;
  if (abs(diff) <= beta) {
    Rational slack = PositivePart(1 - (x + y) / two_alpha);
    return 1 - slack * slack;
  }
  const Rational sx = diff > 0 ? Rational(2 * x - beta) : Rational(2 * x + beta);
  const Rational sy = diff > 0 ? Rational(2 * y + beta) : Rational(2 * y - beta);
  return 1 - PositivePart(1 - sx / two_alpha) * PositivePart(1 - sy / two_alpha);
}

DoublePeakValuation::DoublePeakValuation(int num_items, Bundle a, Bundle b,
                                         Rational alpha, Rational beta)
    : Valuation(num_items),
      a_(a),
      b_(b),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)) {
  RequireGround(a, num_items, "set A");
  RequireGround(b, num_items, "set B");
  if (!(a & b).empty()) throw InputError("double-peak sets must be disjoint");
  if (a.size() != b.size() || a.empty()) {
    throw InputError("double-peak sets must be nonempty and equal-sized");
  }
  RequirePositive(alpha_, "alpha");
  RequirePositive(beta_, "beta");
}

Rational DoublePeakValuation::Evaluate(Bundle s) const {
  Rational x((s & a_).size(), a_.size());
  Rational y((s & b_).size(), b_.size());
  x.canonicalize();
  y.canonicalize();
  return PsiTilde(x, y, alpha_, beta_);
}

SymmetricDoublePeak::SymmetricDoublePeak(int num_items, Bundle support,
                                         Rational alpha)
    : Valuation(num_items), support_(support), alpha_(std::move(alpha)) {
  RequireGround(support, num_items, "support");
  if (support.empty()) throw InputError("support must be nonempty");
  RequirePositive(alpha_, "alpha");
}

Rational SymmetricDoublePeak::ValueForCount(int hits, int support_size,
                                            const Rational& alpha) {
  Rational ratio(hits, support_size);
  ratio.canonicalize();
  Rational slack = PositivePart(1 - ratio / alpha);
  return 1 - slack * slack;
}

Rational SymmetricDoublePeak::Evaluate(Bundle s) const {
  return ValueForCount((s & support_).size(), support_.size(), alpha_);
}

CoverageValuation::CoverageValuation(int universe_size,
                                     std::vector<std::vector<int>> item_sets,
                                     Rational scale)
    : Valuation(static_cast<int>(item_sets.size())),
      universe_size_(universe_size),
      item_sets_(std::move(item_sets)),
      scale_(std::move(scale)) {
  if (universe_size < 0) throw InputError("universe size must be >= 0");
  RequireNonnegative(scale_, "scale");
  for (const auto& set : item_sets_) {
    for (int u : set) {
      if (u < 0 || u >= universe_size) {
        throw InputError("coverage element " + std::to_string(u) +
                         " outside universe");
      }
    }
  }
}

int CoverageValuation::CoveredCount(Bundle t) const {
  std::vector<bool> covered(universe_size_, false);
  int count = 0;
  for (int e : t.Items()) {
    for (int u : item_sets_[e]) {
      if (!covered[u]) {
        covered[u] = true;
        ++count;
      }
    }
  }
  return count;
}

Rational CoverageValuation::Evaluate(Bundle s) const {
  return scale_ * CoveredCount(s);
}

ScaledValuation::ScaledValuation(Rational lambda, ValuationPtr inner)
    : Valuation(inner ? inner->num_items() : 0),
      lambda_(std::move(lambda)),
      inner_(std::move(inner)) {
  if (!inner_) throw InputError("scaled valuation needs an inner valuation");
  RequireNonnegative(lambda_, "lambda");
}

Rational ScaledValuation::Evaluate(Bundle s) const {
  return lambda_ * inner_->Value(s);
}

std::vector<Rational> Tabulate(const Valuation& v, int cap) {
  const int m = v.num_items();
  if (m > cap) throw CapExceeded("tabulation items", m, cap);
  const uint64_t count = uint64_t{1} << m;
  std::vector<Rational> table(count);
  for (uint64_t mask = 0; mask < count; ++mask) table[mask] = v.Value(Bundle(mask));
  return table;
}

bool CheckMonotone(const Valuation& v, int cap) {
  const int m = v.num_items();
  if (m > cap) throw CapExceeded("monotonicity check items", m, cap);
  const std::vector<Rational> table = Tabulate(v, cap);
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    for (int j = 0; j < m; ++j) {
      const uint64_t bit = uint64_t{1} << j;
      if ((mask & bit) == 0 && table[mask] > table[mask | bit]) return false;
    }
  }
  return true;
}

std::optional<SubmodularityViolation> FindSubmodularityViolation(
    const Valuation& v, int cap) {
  const int m = v.num_items();
  if (m > cap) throw CapExceeded("submodularity check items", m, cap);
  const std::vector<Rational> table = Tabulate(v, cap);
  Rational lhs, rhs;
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    for (int i = 0; i < m; ++i) {
      const uint64_t bi = uint64_t{1} << i;
      if (mask & bi) continue;
      for (int j = i + 1; j < m; ++j) {
        const uint64_t bj = uint64_t{1} << j;
        if (mask & bj) continue;
        lhs = table[mask | bi] + table[mask | bj];
        rhs = table[mask] + table[mask | bi | bj];
        if (lhs < rhs) {
          return SubmodularityViolation{Bundle(mask | bi), Bundle(mask | bj)};
        }
      }
    }
  }
  return std::nullopt;
}

bool CheckSubmodular(const Valuation& v, int cap) {
  return !FindSubmodularityViolation(v, cap).has_value();
}

bool CheckSubmodularPairwise(const Valuation& v, int cap) {
  const int m = v.num_items();
  if (m > cap) throw CapExceeded("pairwise submodularity check items", m, cap);
  const std::vector<Rational> table = Tabulate(v, cap);
  for (uint64_t s = 0; s < table.size(); ++s) {
    for (uint64_t t = s + 1; t < table.size(); ++t) {
      if (table[s] + table[t] < table[s & t] + table[s | t]) return false;
    }
  }
  return true;
}

MultiUnitValuation::MultiUnitValuation(Kind kind, int num_units)
    : kind_(std::move(kind)), num_units_(num_units) {
  if (num_units < 1) throw InputError("multi-unit m must be >= 1");
  if (const auto* sm = std::get_if<SingleMinded>(&kind_)) {
    if (sm->threshold < 0 || sm->threshold > num_units) {
      throw InputError("single-minded threshold must lie in [0, m]");
    }
  } else if (const auto* sat = std::get_if<SatBonus>(&kind_)) {
    const int vars = sat->formula.num_vars();
    if (vars >= 31 || (int64_t{1} << vars) != num_units) {
      throw InputError("SAT-bonus valuation needs m = 2^(number of variables)");
    }
    nonzero_at_empty_ = EvalFormula(sat->formula, Assignment(vars));
  } else {
    RequireNonnegative(std::get<Linear>(kind_).slope, "slope");
  }
}

MultiUnitValuation MultiUnitValuation::MakeSingleMinded(int threshold,
                                                        int num_units) {
  return MultiUnitValuation(SingleMinded{threshold}, num_units);
}

MultiUnitValuation MultiUnitValuation::MakeSatBonus(Formula formula) {
  const int vars = formula.num_vars();
  if (vars >= 31) throw InputError("SAT-bonus formula has too many variables");
  return MultiUnitValuation(SatBonus{std::move(formula)}, 1 << vars);
}

MultiUnitValuation MultiUnitValuation::MakeLinear(Rational slope,
                                                  int num_units) {
  return MultiUnitValuation(Linear{std::move(slope)}, num_units);
}

Assignment MultiUnitValuation::AssignmentOf(int64_t s) const {
  const auto* sat = std::get_if<SatBonus>(&kind_);
  if (sat == nullptr) throw InputError("only SAT-bonus counts encode bits");
  if (s < 0 || s >= num_units_) {
    throw InputError("count " + std::to_string(s) + " has no assignment");
  }
  return BitString::FromInteger(static_cast<uint64_t>(s),
                                sat->formula.num_vars());
}

Rational MultiUnitValuation::Value(int64_t s) const {
  if (s < 0 || s > num_units_) {
    throw InputError("count " + std::to_string(s) + " outside [0, " +
                     std::to_string(num_units_) + "]");
  }
  if (const auto* sm = std::get_if<SingleMinded>(&kind_)) {
    return s >= sm->threshold ? 1 : 0;
  }
  if (const auto* sat = std::get_if<SatBonus>(&kind_)) {
    Rational value(2 * s);
    if (s < num_units_ && EvalFormula(sat->formula, AssignmentOf(s))) {
      value += 1;
    }
    return value;
  }
  return std::get<Linear>(kind_).slope * s;
}

}  // namespace truthbench
