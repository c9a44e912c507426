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

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

// Value tables of several valuations over one common denominator, so the
// exhaustive searches add integers instead of rationals.
struct ScaledTables {
  mpz_class denominator = 1;
  std::vector<std::vector<mpz_class>> numerators;
};

ScaledTables Scale(const std::vector<std::vector<Rational>>& tables) {
  ScaledTables out;
  for (const auto& table : tables) {
    for (const Rational& r : table) {
      mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(),
              r.get_den_mpz_t());
    }
  }
  for (const auto& table : tables) {
    std::vector<mpz_class> scaled;
    scaled.reserve(table.size());
    for (const Rational& r : table) {
      scaled.push_back(r.get_num() * (out.denominator / r.get_den()));
    }
    out.numerators.push_back(std::move(scaled));
  }
  return out;
}

// True if sums of up to `terms` entries stay well inside int64.
bool FitsInt64(const ScaledTables& scaled, int terms) {
  const mpz_class limit = mpz_class(1) << 60;
  for (const auto& table : scaled.numerators) {
    for (const mpz_class& v : table) {
      if (abs(v) * (terms + 1) >= limit) return false;
    }
  }
  return true;
}

template <typename T>
T Convert(const mpz_class& v);

template <>
int64_t Convert<int64_t>(const mpz_class& v) {
  return v.get_si();
}

template <>
mpz_class Convert<mpz_class>(const mpz_class& v) {
  return v;
}

inline mpz_class ToMpz(int64_t v) { return mpz_class(static_cast<long>(v)); }
inline mpz_class ToMpz(const mpz_class& v) { return v; }

template <typename T>
std::vector<std::vector<T>> Typed(const ScaledTables& scaled) {
  std::vector<std::vector<T>> out;
  for (const auto& table : scaled.numerators) {
    std::vector<T> typed;
    typed.reserve(table.size());
    for (const mpz_class& v : table) typed.push_back(Convert<T>(v));
    out.push_back(std::move(typed));
  }
  return out;
}

// best[A] = max welfare of the listed bidders using only items in A.
template <typename T>
std::vector<T> WelfareDp(const std::vector<std::vector<T>>& tables,
                         const std::vector<int>& bidders, int m) {
  const uint64_t count = uint64_t{1} << m;
  std::vector<T> best(count, T(0));
  std::vector<T> next(count);
  for (int b : bidders) {
    const std::vector<T>& table = tables[b];
    for (uint64_t mask = 0; mask < count; ++mask) {
      T top = best[mask];
      // Enumerate nonempty submasks given to bidder b.
      for (uint64_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
        T candidate = table[sub] + best[mask ^ sub];
        if (candidate > top) top = candidate;
      }
      next[mask] = top;
    }
    best.swap(next);
  }
  return best;
}

std::vector<std::vector<Rational>> TabulateAll(
    const std::vector<ValuationPtr>& valuations) {
  std::vector<std::vector<Rational>> tables;
  for (const ValuationPtr& v : valuations) tables.push_back(Tabulate(*v));
  return tables;
}

template <typename T>
VcgSolution SolveVcg(const Instance& instance, const ScaledTables& scaled) {
  const int n = instance.num_bidders();
  const int m = instance.num_items;
  const std::vector<std::vector<T>> tables = Typed<T>(scaled);

  // Depth-first over owner vectors in lexicographic order.
  std::vector<int> owner(m, 0);
  std::vector<uint64_t> masks(n, 0);
  bool have_best = false;
  T best_welfare(0);
  std::vector<uint64_t> best_masks(n, 0);
  int64_t ties = 0;

  auto visit_leaf = [&]() {
    T welfare(0);
    for (int i = 0; i < n; ++i) welfare += tables[i][masks[i]];
    if (!have_best || welfare > best_welfare) {
      have_best = true;
      best_welfare = welfare;
      best_masks = masks;
      ties = 1;
    } else if (welfare == best_welfare) {
      ++ties;
    }
  };

  if (n > 0) {
    // Iterative odometer; item 0 is the most significant digit.
    while (true) {
      std::fill(masks.begin(), masks.end(), 0);
      for (int j = 0; j < m; ++j) masks[owner[j]] |= uint64_t{1} << j;
      visit_leaf();
      int j = m - 1;
      while (j >= 0 && owner[j] == n - 1) {
        owner[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++owner[j];
    }
  }

  VcgSolution solution;
  solution.optimal_allocations = ties;
  solution.outcome.allocation.resize(n);
  solution.outcome.payments.resize(n);
  for (int i = 0; i < n; ++i) solution.outcome.allocation[i] = Bundle(best_masks[i]);
  const mpz_class& den = scaled.denominator;
  solution.welfare = Rational(ToMpz(best_welfare), den);
  solution.welfare.canonicalize();

  const uint64_t full = m == 64 ? ~uint64_t{0} : (uint64_t{1} << m) - 1;
  for (int i = 0; i < n; ++i) {
    std::vector<int> others;
    for (int b = 0; b < n; ++b) {
      if (b != i) others.push_back(b);
    }
    const T without_i = WelfareDp(tables, others, m)[full];
    const T others_here = best_welfare - tables[i][best_masks[i]];
    const T payment = without_i - others_here;
    if (payment < 0 || payment > tables[i][best_masks[i]]) {
      throw ContractViolation("VCG payment outside [0, v_i(S_i)]");
    }
    solution.outcome.payments[i] = Rational(ToMpz(payment), den);
    solution.outcome.payments[i].canonicalize();
  }
  return solution;
}

std::optional<OutcomeDistribution> PointMass(Outcome outcome) {
  return OutcomeDistribution{{std::move(outcome), Rational(1)}};
}

}  // namespace

void Instance::Validate() const {
  if (num_items < 0 || num_items > Bundle::kMaxItems) {
    throw InputError("instance item count out of range");
  }
  for (size_t i = 0; i < valuations.size(); ++i) {
    if (!valuations[i]) throw InputError("missing valuation");
    if (valuations[i]->num_items() != num_items) {
      throw InputError("valuation " + std::to_string(i) + " has " +
                       std::to_string(valuations[i]->num_items()) +
                       " items, instance has " + std::to_string(num_items));
    }
  }
}

void ValidateOutcome(const Instance& instance, const Outcome& outcome) {
  const size_t n = instance.valuations.size();
  if (outcome.allocation.size() != n || outcome.payments.size() != n) {
    throw ContractViolation("outcome size does not match bidder count");
  }
  Bundle used;
  for (size_t i = 0; i < n; ++i) {
    const Bundle s = outcome.allocation[i];
    if (!s.WithinGround(instance.num_items)) {
      throw ContractViolation("allocated bundle outside the ground set");
    }
    if (!(used & s).empty()) throw ContractViolation("overlapping bundles");
    used = used | s;
    if (outcome.payments[i] < 0) throw ContractViolation("negative payment");
  }
}

Rational Welfare(const Instance& instance, const Outcome& outcome) {
  Rational total = 0;
  for (size_t i = 0; i < instance.valuations.size(); ++i) {
    total += instance.valuations[i]->Value(outcome.allocation[i]);
  }
  return total;
}

void ValidateDistribution(const OutcomeDistribution& distribution) {
  Rational total = 0;
  for (const WeightedOutcome& w : distribution) {
    if (w.probability <= 0) {
      throw ContractViolation("nonpositive outcome probability");
    }
    total += w.probability;
  }
  if (total != 1) throw ContractViolation("probabilities do not sum to 1");
}

std::vector<Rational> MaxWelfareByAvailableSet(
    const std::vector<ValuationPtr>& valuations, int num_items) {
  if (num_items > 20) {
    throw CapExceeded("welfare table items", num_items, 20);
  }
  for (const ValuationPtr& v : valuations) {
    if (v->num_items() != num_items) {
      throw InputError("valuation size does not match item count");
    }
  }
  const ScaledTables scaled = Scale(TabulateAll(valuations));
  std::vector<int> all(valuations.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<Rational> out;
  auto emit = [&](const auto& best) {
    out.reserve(best.size());
    for (const auto& v : best) {
      Rational r(ToMpz(v), scaled.denominator);
      r.canonicalize();
      out.push_back(std::move(r));
    }
  };
  if (FitsInt64(scaled, num_items)) {
    emit(WelfareDp(Typed<int64_t>(scaled), all, num_items));
  } else {
    emit(WelfareDp(Typed<mpz_class>(scaled), all, num_items));
  }
  return out;
}

VcgSolution VcgMechanism::Solve(const Instance& instance) const {
  instance.Validate();
  const int n = instance.num_bidders();
  const int m = instance.num_items;
  if (n == 0) throw InputError("VCG needs at least one bidder");
  const double allocations = std::pow(static_cast<double>(n), m);
  if (allocations > allocation_cap_) {
    throw CapExceeded("VCG allocations n^m", allocations, allocation_cap_);
  }
  const ScaledTables scaled = Scale(TabulateAll(instance.valuations));
  VcgSolution solution = FitsInt64(scaled, m + n)
                             ? SolveVcg<int64_t>(instance, scaled)
                             : SolveVcg<mpz_class>(instance, scaled);
  ValidateOutcome(instance, solution.outcome);
  return solution;
}

Outcome VcgMechanism::Run(const Instance& instance, uint64_t) const {
  return Solve(instance).outcome;
}

std::optional<OutcomeDistribution> VcgMechanism::FullDistribution(
    const Instance& instance) const {
  return PointMass(Run(instance, 0));
}

std::string DictatorMechanism::name() const {
  return "dictator:" + std::to_string(bidder_);
}

Outcome DictatorMechanism::Run(const Instance& instance, uint64_t) const {
  instance.Validate();
  const int n = instance.num_bidders();
  if (bidder_ < 0 || bidder_ >= n) {
    throw InputError("dictator bidder out of range");
  }
  Outcome outcome;
  outcome.allocation.assign(n, Bundle());
  outcome.payments.assign(n, Rational(0));
  outcome.allocation[bidder_] = Bundle::Full(instance.num_items);
  return outcome;
}

std::optional<OutcomeDistribution> DictatorMechanism::FullDistribution(
    const Instance& instance) const {
  return PointMass(Run(instance, 0));
}

Outcome GreedyMechanism::Run(const Instance& instance, uint64_t) const {
  instance.Validate();
  const int n = instance.num_bidders();
  if (n == 0) throw InputError("greedy needs at least one bidder");
  Outcome outcome;
  outcome.allocation.assign(n, Bundle());
  outcome.payments.assign(n, Rational(0));
  std::vector<Rational> current(n, Rational(0));
  for (int j = 0; j < instance.num_items; ++j) {
    int winner = 0;
    Rational best_gain;
    Rational best_value;
    for (int i = 0; i < n; ++i) {
      Rational value =
          instance.valuations[i]->Value(outcome.allocation[i].With(j));
      Rational gain = value - current[i];
      if (i == 0 || gain > best_gain) {
        winner = i;
        best_gain = gain;
        best_value = value;
      }
    }
    outcome.allocation[winner] = outcome.allocation[winner].With(j);
    current[winner] = best_value;
  }
  return outcome;
}

std::optional<OutcomeDistribution> GreedyMechanism::FullDistribution(
    const Instance& instance) const {
  return PointMass(Run(instance, 0));
}

MechanismPtr MakeMechanism(std::string_view name) {
  if (name == "vcg") return std::make_shared<VcgMechanism>();
  if (name == "greedy") return std::make_shared<GreedyMechanism>();
  if (name == "dictator") return std::make_shared<DictatorMechanism>(0);
  constexpr std::string_view kDictator = "dictator:";
  if (name.substr(0, kDictator.size()) == kDictator) {
    std::string_view rest = name.substr(kDictator.size());
    int bidder = -1;
    auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), bidder);
    if (ec == std::errc() && ptr == rest.data() + rest.size() && bidder >= 0) {
      return std::make_shared<DictatorMechanism>(bidder);
    }
  }
  throw InputError("unknown mechanism '" + std::string(name) + "'");
}

CppOutcome CppExact::Run(const Valuation& v, int k, uint64_t) const {
  const int m = v.num_items();
  if (k < 0 || k > m) throw InputError("CPP size k out of range");
  double subsets = 1;
  for (int i = 0; i < k; ++i) subsets = subsets * (m - i) / (i + 1);
  if (subsets > subset_cap_) {
    throw CapExceeded("CPP k-subsets", subsets, subset_cap_);
  }
  bool have_best = false;
  Bundle best;
  Rational best_value;
  for (Bundle s : KSubsets(m, k)) {
    Rational value = v.Value(s);
    if (!have_best || value > best_value) {
      have_best = true;
      best = s;
      best_value = std::move(value);
    }
  }
  return CppOutcome{best, Rational(0)};
}

std::optional<std::vector<WeightedCppOutcome>> CppExact::FullDistribution(
    const Valuation& v, int k) const {
  return std::vector<WeightedCppOutcome>{{Run(v, k, 0), Rational(1)}};
}

int64_t SharedUnits(const MultiUnitValuation& v1,
                    const MultiUnitValuation& v2) {
  if (v1.num_units() != v2.num_units()) {
    throw InputError("multi-unit valuations disagree on m");
  }
  return v1.num_units();
}

MultiUnitOutcome MidrExact::Run(const MultiUnitValuation& v1,
                                const MultiUnitValuation& v2,
                                uint64_t) const {
  const int64_t m = SharedUnits(v1, v2);
  int64_t best_x = 0;
  Rational best = v1.Value(0) + v2.Value(m);
  Rational top1 = v1.Value(0);
  Rational top2 = v2.Value(m);
  for (int64_t x = 1; x <= m; ++x) {
    Rational a = v1.Value(x);
    Rational b = v2.Value(m - x);
    if (a > top1) top1 = a;
    if (b > top2) top2 = b;
    Rational welfare = a + b;
    if (welfare > best) {
      best = std::move(welfare);
      best_x = x;
    }
  }
  MultiUnitOutcome out;
  out.x = best_x;
  // Clarke pivot over the range of all splits: with one bidder removed the
  // other would pick the split it likes best.
  out.payment1 = top2 - v2.Value(m - best_x);
  out.payment2 = top1 - v1.Value(best_x);
  return out;
}

std::optional<std::vector<WeightedMultiUnitOutcome>> MidrExact::FullDistribution(
    const MultiUnitValuation& v1, const MultiUnitValuation& v2) const {
  return std::vector<WeightedMultiUnitOutcome>{{Run(v1, v2, 0), Rational(1)}};
}

MultiUnitOutcome UniformRandomSplit::Run(const MultiUnitValuation& v1,
                                         const MultiUnitValuation& v2,
                                         uint64_t seed) const {
  const int64_t m = SharedUnits(v1, v2);
  Rng rng(seed);
  MultiUnitOutcome out;
  out.x = static_cast<int64_t>(rng.Uniform(static_cast<uint64_t>(m) + 1));
  return out;
}

std::optional<std::vector<WeightedMultiUnitOutcome>>
UniformRandomSplit::FullDistribution(const MultiUnitValuation& v1,
                                     const MultiUnitValuation& v2) const {
  const int64_t m = SharedUnits(v1, v2);
  std::vector<WeightedMultiUnitOutcome> out;
  Rational p(1, m + 1);
  for (int64_t x = 0; x <= m; ++x) {
    MultiUnitOutcome o;
    o.x = x;
    out.push_back({o, p});
  }
  return out;
}

}  // namespace truthbench
