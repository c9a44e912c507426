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

#ifndef TRUTHBENCH_VALUATIONS_H_
#define TRUTHBENCH_VALUATIONS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "truthbench/bundle.h"
#include "truthbench/rational.h"
#include "truthbench/satkit.h"

namespace truthbench {

// A monotone set function 2^[m] -> nonnegative rationals. Implementations
// are immutable after construction; Value() is safe to call concurrently.
class Valuation {
 public:
  explicit Valuation(int num_items);
  virtual ~Valuation() = default;

  int num_items() const { return num_items_; }

  // Throws InputError if `s` has items outside [0, num_items()).
  Rational Value(Bundle s) const;

  virtual std::string_view family() const = 0;

 protected:
  virtual Rational Evaluate(Bundle s) const = 0;

 private:
  int num_items_;
};

using ValuationPtr = std::shared_ptr<const Valuation>;

class AdditiveValuation : public Valuation {
 public:
  explicit AdditiveValuation(std::vector<Rational> per_item);

  const std::vector<Rational>& per_item() const { return per_item_; }
  std::string_view family() const override { return "additive"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  std::vector<Rational> per_item_;
};

// v(S) = |S n A| + omega * |S \ A|.
class PolarAdditiveValuation : public Valuation {
 public:
  PolarAdditiveValuation(int num_items, Bundle high_set, Rational omega);

  // The low value 1/m^3 used for random polar valuations.
  static Rational DefaultOmega(int num_items);

  Bundle high_set() const { return high_set_; }
  const Rational& omega() const { return omega_; }
  // Per-item view of the same function.
  std::vector<Rational> PerItem() const;
  std::string_view family() const override { return "polar_additive"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  Bundle high_set_;
  Rational omega_;
};

enum class PolarSampling {
  // Each item is high independently with probability 1/n.
  kBernoulli,
  // The high set is a uniformly random set of exactly floor(m/n) items.
  kExactSize,
};

// Random polar additive valuation with omega = 1/m^3.
std::shared_ptr<const PolarAdditiveValuation> SampleRandomPolar(
    int num_items, int num_bidders, uint64_t seed,
    PolarSampling sampling = PolarSampling::kBernoulli);

// A boolean function of bundles with a serializable description tag.
// Implementations must be re-entrant.
class BundlePredicate {
 public:
  virtual ~BundlePredicate() = default;
  virtual bool operator()(Bundle s) const = 0;
  virtual std::string Description() const = 0;
};

using PredicatePtr = std::shared_ptr<const BundlePredicate>;

// Explicit truth table indexed by bundle mask; for tiny m.
class TruthTablePredicate : public BundlePredicate {
 public:
  TruthTablePredicate(int num_items, std::vector<bool> table);

  bool operator()(Bundle s) const override;
  std::string Description() const override;
  int num_items() const { return num_items_; }
  const std::vector<bool>& table() const { return table_; }

 private:
  int num_items_;
  std::vector<bool> table_;
};

class FunctionPredicate : public BundlePredicate {
 public:
  FunctionPredicate(std::function<bool(Bundle)> fn, std::string description)
      : fn_(std::move(fn)), description_(std::move(description)) {}

  bool operator()(Bundle s) const override { return fn_(s); }
  std::string Description() const override { return description_; }

 private:
  std::function<bool(Bundle)> fn_;
  std::string description_;
};

// Up-closure of `generators`: true iff s contains some generator. Monotone by
// construction.
PredicatePtr UpClosurePredicate(std::vector<Bundle> generators);

// Exhaustive monotonicity test of a predicate over [0, m).
bool IsMonotonePredicate(const BundlePredicate& predicate, int num_items);

// The five-case bonus valuation with parameters (t, k, P, B):
//   |S| < k                      -> |S| t
//   |S| >= k, P(S) = 0           -> (k - 2^-|S|) t
//   |S| = k, P(S) = 1, B(S) = 0  -> k t - 1/m^4
//   |S| = k, P(S) = 1, B(S) = 1  -> k t
//   |S| > k, P(S) = 1            -> k t
// P and B answers are memoized per bundle.
class BonusValuation : public Valuation {
 public:
  enum class Case {
    kBelowK,
    kNoMenu,
    kMenuNoBonus,
    kMenuBonus,
    kAboveKOnMenu,
  };

  struct Options {
    // Exhaustively verify that P is monotone when m <= kMonotoneCheckCap.
    // Tests of the non-monotone negative control turn this off.
    bool validate_monotone = true;
  };
  static constexpr int kMonotoneCheckCap = 14;

  BonusValuation(int num_items, Rational t, int k, PredicatePtr menu,
                 PredicatePtr bonus, Options options);
  BonusValuation(int num_items, Rational t, int k, PredicatePtr menu,
                 PredicatePtr bonus)
      : BonusValuation(num_items, std::move(t), k, std::move(menu),
                       std::move(bonus), Options{}) {}

  // The gap 1/m^4 between the bonus and non-bonus menu cases.
  static Rational BonusGap(int num_items);

  const Rational& t() const { return t_; }
  int k() const { return k_; }
  const BundlePredicate& menu_predicate() const { return *menu_; }
  const BundlePredicate& bonus_predicate() const { return *bonus_; }
  PredicatePtr menu_predicate_ptr() const { return menu_; }
  PredicatePtr bonus_predicate_ptr() const { return bonus_; }

  Case Classify(Bundle s) const;
  bool P(Bundle s) const;
  bool B(Bundle s) const;

  std::string_view family() const override { return "bonus"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  bool Memoized(const BundlePredicate& predicate,
                std::unordered_map<uint64_t, bool>& memo, Bundle s) const;

  Rational t_;
  int k_;
  PredicatePtr menu_;
  PredicatePtr bonus_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<uint64_t, bool> menu_memo_;
  mutable std::unordered_map<uint64_t, bool> bonus_memo_;
};

// The double-peak kernel. With (z)+ = max(z, 0):
//   |x - y| <= beta : 1 - (1 - (x + y) / (2 alpha))+^2
//   x - y > beta    : 1 - (1 - (2x - beta) / (2 alpha))+ (1 - (2y + beta) /
//   (2 alpha))+ y - x > beta    : the mirror image.
// Throws InputError unless 0 <= x, y <= 1 and alpha, beta > 0.
Rational PsiTilde(const Rational& x, const Rational& y, const Rational& alpha,
                  const Rational& beta);

// f(S) = PsiTilde(|S n A| / |A|, |S n B| / |B|).
class DoublePeakValuation : public Valuation {
 public:
  DoublePeakValuation(int num_items, Bundle a, Bundle b, Rational alpha,
                      Rational beta);

  Bundle a() const { return a_; }
  Bundle b() const { return b_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  std::string_view family() const override { return "double_peak"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  Bundle a_;
  Bundle b_;
  Rational alpha_;
  Rational beta_;
};

// 1 - (1 - |S n C| / (alpha |C|))+^2; the double-peak function with the
// partition of C forgotten.
class SymmetricDoublePeak : public Valuation {
 public:
  SymmetricDoublePeak(int num_items, Bundle support, Rational alpha);

  // Same formula on a raw count, shared with the encoded valuation.
  static Rational ValueForCount(int hits, int support_size,
                                const Rational& alpha);

  Bundle support() const { return support_; }
  const Rational& alpha() const { return alpha_; }
  std::string_view family() const override { return "symmetric_double_peak"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  Bundle support_;
  Rational alpha_;
};

// v(T) = scale * |union of item_sets[e] for e in T| over a universe
// [0, universe_size).
class CoverageValuation : public Valuation {
 public:
  CoverageValuation(int universe_size, std::vector<std::vector<int>> item_sets,
                    Rational scale = Rational(1));

  int universe_size() const { return universe_size_; }
  const std::vector<std::vector<int>>& item_sets() const { return item_sets_; }
  const Rational& scale() const { return scale_; }
  // Size of the union without the scale factor.
  int CoveredCount(Bundle t) const;
  std::string_view family() const override { return "coverage"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  int universe_size_;
  std::vector<std::vector<int>> item_sets_;
  Rational scale_;
};

// lambda * inner(S).
class ScaledValuation : public Valuation {
 public:
  ScaledValuation(Rational lambda, ValuationPtr inner);

  const Rational& lambda() const { return lambda_; }
  const ValuationPtr& inner() const { return inner_; }
  std::string_view family() const override { return "scaled"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  Rational lambda_;
  ValuationPtr inner_;
};

// Values for every bundle of [0, m), indexed by mask. Throws CapExceeded for
// m > cap.
std::vector<Rational> Tabulate(const Valuation& v, int cap = 24);

inline constexpr int kStructuralCheckCap = 14;

// Exhaustive monotonicity over all S subset T, checked through the
// equivalent single-item extensions v(S) <= v(S + j).
bool CheckMonotone(const Valuation& v, int cap = kStructuralCheckCap);

struct SubmodularityViolation {
  Bundle s;
  Bundle t;
};

// Exhaustive submodularity via the diminishing-returns form: for every S and
// distinct i, j outside S, v(S+i) + v(S+j) >= v(S) + v(S+i+j). This local
// condition is equivalent to the lattice inequality on all pairs.
bool CheckSubmodular(const Valuation& v, int cap = kStructuralCheckCap);
std::optional<SubmodularityViolation> FindSubmodularityViolation(
    const Valuation& v, int cap = kStructuralCheckCap);

// Direct lattice form v(S) + v(T) >= v(S n T) + v(S u T) over all pairs.
// Quadratic in 2^m; used to cross-check the local form on small m.
bool CheckSubmodularPairwise(const Valuation& v, int cap = 12);

// Valuations over m identical items, v : {0..m} -> nonnegative rationals.
class MultiUnitValuation {
 public:
  struct SingleMinded {
    int threshold;
  };
  // 2s + [phi(bits(s))]; m must be 2^num_vars. Counts are read as
  // num_vars-bit assignments, most significant bit = x1. s = m has no
  // num_vars-bit reading and receives no bonus.
  struct SatBonus {
    Formula formula;
  };
  struct Linear {
    Rational slope;
  };
  using Kind = std::variant<SingleMinded, SatBonus, Linear>;

  MultiUnitValuation(Kind kind, int num_units);

  static MultiUnitValuation MakeSingleMinded(int threshold, int num_units);
  static MultiUnitValuation MakeSatBonus(Formula formula);
  static MultiUnitValuation MakeLinear(Rational slope, int num_units);

  // Throws InputError for s outside [0, m].
  Rational Value(int64_t s) const;
  // The assignment encoded by count s (SatBonus only, s < m).
  Assignment AssignmentOf(int64_t s) const;

  int num_units() const { return num_units_; }
  const Kind& kind() const { return kind_; }
  // True for SatBonus formulas satisfied by the all-zero assignment, which
  // give v(0) = 1.
  bool nonzero_at_empty() const { return nonzero_at_empty_; }

 private:
  Kind kind_;
  int num_units_;
  bool nonzero_at_empty_ = false;
};

}  // namespace truthbench

#endif  // TRUTHBENCH_VALUATIONS_H_
