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

#ifndef TRUTHBENCH_MECHANISMS_H_
#define TRUTHBENCH_MECHANISMS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "truthbench/bundle.h"
#include "truthbench/rational.h"
#include "truthbench/valuations.h"

namespace truthbench {

struct Instance {
  int num_items = 0;
  std::vector<ValuationPtr> valuations;

  int num_bidders() const { return static_cast<int>(valuations.size()); }
  // Throws InputError unless every valuation has num_items items.
  void Validate() const;
};

struct Outcome {
  std::vector<Bundle> allocation;
  std::vector<Rational> payments;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Throws ContractViolation if bundles overlap, leave the ground set, or a
// payment is negative.
void ValidateOutcome(const Instance& instance, const Outcome& outcome);

Rational Welfare(const Instance& instance, const Outcome& outcome);

struct WeightedOutcome {
  Outcome outcome;
  Rational probability;
};

// Finite support; probabilities are positive and sum to exactly 1.
using OutcomeDistribution = std::vector<WeightedOutcome>;

void ValidateDistribution(const OutcomeDistribution& distribution);

class Mechanism {
 public:
  virtual ~Mechanism() = default;
  virtual std::string name() const = 0;
  // Deterministic given (instance, seed); re-entrant.
  virtual Outcome Run(const Instance& instance, uint64_t seed) const = 0;
  // Exact outcome law, when the mechanism can provide it.
  virtual std::optional<OutcomeDistribution> FullDistribution(
      const Instance& /*instance*/) const {
    return std::nullopt;
  }
};

using MechanismPtr = std::shared_ptr<const Mechanism>;

// Max over disjoint (S_1, ..., S_n) inside each available set A of
// sum v_i(S_i), for every mask A over [0, m). Entry 0 is 0. With no
// valuations every entry is 0.
std::vector<Rational> MaxWelfareByAvailableSet(
    const std::vector<ValuationPtr>& valuations, int num_items);

struct VcgSolution {
  Outcome outcome;
  Rational welfare;
  // Number of welfare-maximizing allocations among those enumerated.
  int64_t optimal_allocations = 0;
};

// Exhaustive welfare maximization with Clarke pivot payments.
//
// Allocations are owner vectors (owner of item 0, ..., owner of item m-1)
// enumerated in lexicographic order; the first one attaining the maximum
// welfare wins. Valuations are monotone, so the lexicographically first
// optimum never needs unallocated items and only n^m complete vectors are
// scanned.
class VcgMechanism : public Mechanism {
 public:
  static constexpr double kDefaultAllocationCap = 16777216.0;  // 2^24

  explicit VcgMechanism(double allocation_cap = kDefaultAllocationCap)
      : allocation_cap_(allocation_cap) {}

  std::string name() const override { return "vcg"; }
  Outcome Run(const Instance& instance, uint64_t seed) const override;
  std::optional<OutcomeDistribution> FullDistribution(
      const Instance& instance) const override;

  VcgSolution Solve(const Instance& instance) const;

 private:
  double allocation_cap_;
};

// Gives every item to one bidder at price 0.
class DictatorMechanism : public Mechanism {
 public:
  explicit DictatorMechanism(int bidder) : bidder_(bidder) {}

  int bidder() const { return bidder_; }
  std::string name() const override;
  Outcome Run(const Instance& instance, uint64_t seed) const override;
  std::optional<OutcomeDistribution> FullDistribution(
      const Instance& instance) const override;

 private:
  int bidder_;
};

// Items in index order, each to the bidder with the largest marginal value
// (lowest index on ties); no payments. Not truthful.
class GreedyMechanism : public Mechanism {
 public:
  std::string name() const override { return "greedy"; }
  Outcome Run(const Instance& instance, uint64_t seed) const override;
  std::optional<OutcomeDistribution> FullDistribution(
      const Instance& instance) const override;
};

// Names: "vcg", "greedy", "dictator" (bidder 0) or "dictator:<i>".
MechanismPtr MakeMechanism(std::string_view name);

// Single-bidder exact combinatorial public project: one set with |S| = k.
struct CppOutcome {
  Bundle bundle;
  Rational price;

  friend bool operator==(const CppOutcome&, const CppOutcome&) = default;
};

struct WeightedCppOutcome {
  CppOutcome outcome;
  Rational probability;
};

class CppMechanism {
 public:
  virtual ~CppMechanism() = default;
  virtual std::string name() const = 0;
  virtual CppOutcome Run(const Valuation& v, int k, uint64_t seed) const = 0;
  virtual std::optional<std::vector<WeightedCppOutcome>> FullDistribution(
      const Valuation& /*v*/, int /*k*/) const {
    return std::nullopt;
  }
};

using CppMechanismPtr = std::shared_ptr<const CppMechanism>;

// Lexicographically first size-k maximizer, price 0.
class CppExact : public CppMechanism {
 public:
  static constexpr double kDefaultSubsetCap = 16777216.0;

  explicit CppExact(double subset_cap = kDefaultSubsetCap)
      : subset_cap_(subset_cap) {}

  std::string name() const override { return "cpp_exact"; }
  CppOutcome Run(const Valuation& v, int k, uint64_t seed) const override;
  std::optional<std::vector<WeightedCppOutcome>> FullDistribution(
      const Valuation& v, int k) const override;

 private:
  double subset_cap_;
};

// Two bidders, m identical items; bidder 1 receives x, bidder 2 m - x.
struct MultiUnitOutcome {
  int64_t x = 0;
  Rational payment1;
  Rational payment2;

  friend bool operator==(const MultiUnitOutcome&,
                         const MultiUnitOutcome&) = default;
};

struct WeightedMultiUnitOutcome {
  MultiUnitOutcome outcome;
  Rational probability;
};

class MultiUnitMechanism {
 public:
  virtual ~MultiUnitMechanism() = default;
  virtual std::string name() const = 0;
  virtual MultiUnitOutcome Run(const MultiUnitValuation& v1,
                               const MultiUnitValuation& v2,
                               uint64_t seed) const = 0;
  virtual std::optional<std::vector<WeightedMultiUnitOutcome>>
  FullDistribution(const MultiUnitValuation& /*v1*/,
                   const MultiUnitValuation& /*v2*/) const {
    return std::nullopt;
  }
};

using MultiUnitMechanismPtr = std::shared_ptr<const MultiUnitMechanism>;

// Maximizes v1(x) + v2(m - x) over all m + 1 splits, smallest x on ties,
// with VCG payments over the same range. Always allocates every item.
class MidrExact : public MultiUnitMechanism {
 public:
  std::string name() const override { return "midr_exact"; }
  MultiUnitOutcome Run(const MultiUnitValuation& v1,
                       const MultiUnitValuation& v2,
                       uint64_t seed) const override;
  std::optional<std::vector<WeightedMultiUnitOutcome>> FullDistribution(
      const MultiUnitValuation& v1,
      const MultiUnitValuation& v2) const override;
};

// Uniformly random split, no payments. A control, not an MIDR mechanism.
class UniformRandomSplit : public MultiUnitMechanism {
 public:
  std::string name() const override { return "uniform_split"; }
  MultiUnitOutcome Run(const MultiUnitValuation& v1,
                       const MultiUnitValuation& v2,
                       uint64_t seed) const override;
  std::optional<std::vector<WeightedMultiUnitOutcome>> FullDistribution(
      const MultiUnitValuation& v1,
      const MultiUnitValuation& v2) const override;
};

// Checks that both valuations share m. Throws InputError otherwise.
int64_t SharedUnits(const MultiUnitValuation& v1,
                    const MultiUnitValuation& v2);

}  // namespace truthbench

#endif  // TRUTHBENCH_MECHANISMS_H_
