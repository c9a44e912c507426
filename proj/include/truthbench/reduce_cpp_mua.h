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

#ifndef TRUTHBENCH_REDUCE_CPP_MUA_H_
#define TRUTHBENCH_REDUCE_CPP_MUA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "truthbench/bundle.h"
#include "truthbench/mechanisms.h"
#include "truthbench/rational.h"
#include "truthbench/satkit.h"

namespace truthbench {

enum class CoverKind { kUncertified, kYes, kNo };

const char* CoverKindName(CoverKind kind);

// Sets S_e over the universe [0, universe_size), indexed by e in [0, d k).
// Every element lies in exactly d sets.
struct RegularCoverInstance {
  int universe_size = 0;
  int k = 0;
  int d = 0;
  std::vector<std::vector<int>> sets;
  CoverKind kind = CoverKind::kUncertified;
  // k set indices covering the universe (kYes).
  std::vector<int> witness;
  // Exhaustive maximum coverage over k-subsets (kNo).
  std::optional<int> certified_max;

  int num_sets() const { return static_cast<int>(sets.size()); }
  int Covered(Bundle chosen) const;
  // Throws ContractViolation if the shape or regularity fails.
  void Validate() const;
};

// The witness is the contiguous split of [0, u) into k parts; d - 1
// further seeded random equal partitions supply the other sets. Throws
// InputError unless k divides u.
RegularCoverInstance BuildRegularYesInstance(int universe_size, int k, int d,
                                             uint64_t seed);

// Each element joins d distinct sets drawn uniformly from the d k sets.
// Regular by construction; whether a full cover exists is left to
// certification.
RegularCoverInstance BuildRegularRandomInstance(int universe_size, int k,
                                                int d, uint64_t seed);

inline constexpr double kCoverSubsetCap = 16777216.0;

struct CoverCertificate {
  CoverKind verdict = CoverKind::kUncertified;
  int max_covered = 0;
  // The lexicographically first maximizer.
  Bundle best;
};

// YES when some k sets cover the universe; NO when the maximum coverage is
// at most threshold * |U|; uncertified otherwise.
CoverCertificate CertifyInstance(const RegularCoverInstance& instance,
                                 const Rational& threshold,
                                 double cap = kCoverSubsetCap);

// `instance` with kind, witness and certified_max filled in from the
// certificate.
RegularCoverInstance Certified(RegularCoverInstance instance,
                               const Rational& threshold);

// Average over every size-k A of the mechanism's (expected) price on
// f_A(S) = |S n A|.
Rational ComputePm(const CppMechanism& mechanism, int num_items, int k,
                   uint64_t seed = 0, double cap = kCoverSubsetCap);

// A fixed-precision rational stand-in for 1/e, accurate to 1e-17.
Rational InverseE();

enum class ThresholdMode {
  // (1 - 1/e + eps, 1 - 1/e + 2 eps).
  kAsymptotic,
  // (no_fraction, 1): the certified NO bound against full coverage.
  kAdaptive,
};

struct CPPConfig {
  Rational c = Rational(1, 2);
  // Zero means c^2 / 4.
  Rational epsilon;
  // Unset means computed with ComputePm.
  std::optional<Rational> p_m;
  int trials = 8;
  uint64_t seed = 0;
  ThresholdMode mode = ThresholdMode::kAsymptotic;
  Rational no_fraction;

  Rational EffectiveEpsilon() const;
  // Fractions of p_m |U|: values at most `low` mean NO, at least `high` YES.
  Rational Low() const;
  Rational High() const;
  void Validate() const;
};

struct CppTrial {
  uint64_t seed = 0;
  std::vector<int> permutation;
  Bundle returned;
  // Expected f(R) under the returned distribution.
  Rational value;
  Rational price;
};

struct CppDecisionReport {
  bool yes = false;
  Rational p_m;
  // p_m, or 1 when p_m = 0.
  Rational scale;
  Rational low_value;
  Rational high_value;
  Rational cutoff;
  Rational mean_value;
  std::vector<CppTrial> trials;
};

// Refuses uncertified instances with InputError.
CppDecisionReport CppDecision(const RegularCoverInstance& instance,
                              const CppMechanism& mechanism,
                              const CPPConfig& config);

struct MuaTrial {
  uint64_t seed = 0;
  int64_t x = 0;
  Rational welfare;
};

struct MuaReport {
  std::optional<Assignment> assignment;
  std::vector<MuaTrial> trials;
};

// Two bidders: v_phi and u(s) = 2s on m = 2^vars units. Returns the first
// trial whose split has welfare 2m + 1, decoded and re-verified.
MuaReport MuaExtract(const Formula& formula,
                     const MultiUnitMechanism& mechanism, int64_t num_units,
                     int trials, uint64_t seed);

struct Lemma52Report {
  int64_t x = 0;
  int64_t num_units = 0;
  int trials = 0;
  int hits = 0;
  double empirical_rate = 0;
  // From FullDistribution when available.
  std::optional<Rational> exact_probability;
  Rational bound;
  // Below 2 eps: the rate (exact when known) misses the bound.
  bool flagged = false;
};

Lemma52Report Lemma52Check(const MultiUnitMechanism& mechanism, int64_t x,
                           int64_t num_units, const Rational& epsilon,
                           int trials, uint64_t seed);

}  // namespace truthbench

#endif  // TRUTHBENCH_REDUCE_CPP_MUA_H_
