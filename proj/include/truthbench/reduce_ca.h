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

#ifndef TRUTHBENCH_REDUCE_CA_H_
#define TRUTHBENCH_REDUCE_CA_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "truthbench/bundle.h"
#include "truthbench/mechanisms.h"
#include "truthbench/menus.h"
#include "truthbench/rational.h"
#include "truthbench/satkit.h"
#include "truthbench/valuations.h"

namespace truthbench {

// T in {0,1}^{ell x m}; T(S) = T 1_S over GF(2).
class ProjectionMatrix {
 public:
  // Rows given as masks over the m columns.
  ProjectionMatrix(int num_items, std::vector<uint64_t> rows);
  // Entries are i.i.d. uniform bits from the seeded source.
  static ProjectionMatrix Random(int ell, int num_items, uint64_t seed);

  int ell() const { return static_cast<int>(rows_.size()); }
  int num_items() const { return num_items_; }
  const std::vector<uint64_t>& rows() const { return rows_; }
  bool Entry(int row, int column) const { return (rows_[row] >> column) & 1; }
  BitString Column(int column) const;

  Assignment Project(Bundle s) const;

 private:
  int num_items_;
  std::vector<uint64_t> rows_;
};

// B(S) = phi(T(S)).
PredicatePtr SatisfiesAfterProjection(const Formula& formula,
                                      const ProjectionMatrix& projection);

enum class BonusScaleMode {
  // t = 2^(2m); requires m <= 16.
  kExponential,
  // t = m 2^m + 1, the smallest integer with t > p and t 2^-m > p for every
  // p <= m, which is all the strict utility comparisons need.
  kScaled,
};

Rational BonusScale(int num_items, BonusScaleMode mode);

// The bonus valuation (t, k, P_p, B) whose menu predicate probes `prober`.
std::shared_ptr<const BonusValuation> BuildBonusFromMechanism(
    std::shared_ptr<const MenuProber> prober, int k, const Rational& t,
    const ProjectionMatrix& projection, const Formula& formula,
    bool validate_menu_predicate = true);

enum class PriceGridMode {
  // Multiples of eps_window in (0, m].
  kFull,
  // Multiples of price_step in (0, m].
  kStep,
  // Exactly price_values.
  kExplicit,
  // Prices revealed by a discovery pass (each bundle reported at 2m per
  // item), rounded up to multiples of eps_window.
  kObserved,
};

struct CAReductionConfig {
  int num_items = 4;
  int num_bidders = 2;
  BonusScaleMode scale_mode = BonusScaleMode::kExponential;
  PriceGridMode grid_mode = PriceGridMode::kObserved;
  Rational price_step;
  std::vector<Rational> price_values;
  // Empty means 1..m.
  std::vector<int> k_values;
  // Zero means the defaults 1/m^5, 1/m^3, 1/m^6.
  Rational eps_window;
  Rational eps_gap;
  Rational eps_probe;
  int outer_repeats = 1;
  PolarSampling sampling = PolarSampling::kBernoulli;
  uint64_t seed = 0;
  bool validate_menu_predicate = true;
  int workers = 1;

  void Validate() const;
  Rational EffectiveWindow() const;
  Rational EffectiveGap() const;
  Rational EffectiveProbe() const;
};

struct CATrial {
  int repeat = 0;
  uint64_t seed = 0;
  int bidder = 0;
  int k = 0;
  Rational p;
  Bundle returned;
  bool bonus = false;
  // Set when building the valuation or running the mechanism failed.
  std::string error;
};

struct CAReductionReport {
  bool satisfiable = false;
  std::optional<Assignment> assignment;
  // Outer repeats actually examined (all of them for PRESUMED_UNSAT).
  int repeats_run = 0;
  int64_t mechanism_runs = 0;
  std::vector<CATrial> trials;
};

// The price levels a sweep would try for the given profile.
std::vector<Rational> PriceGrid(const CAReductionConfig& config,
                                const Mechanism& mechanism,
                                const OthersProfile& profile, uint64_t seed);

// Random special bidder and random polar others for outer repeat r.
OthersProfile DrawProfile(const CAReductionConfig& config, int repeat);

CAReductionReport RunReductionCA(const Formula& formula,
                                 MechanismPtr mechanism,
                                 const CAReductionConfig& config);

// One (k, p) point of a sweep checked against the closed-form menu of a
// reference mechanism.
struct BonusPointCheck {
  std::vector<Bundle> submenu;
  // First submenu bundle with B = 1, if any.
  std::optional<Bundle> witness;
  Bundle returned;
  bool returned_bonus = false;
  // Bundles that probing put on P = 1 but the definition does not, or the
  // reverse, among size-k bundles.
  int64_t predicate_mismatches = 0;
  // Strict utility comparisons u(S*) > u(S) over all S != S* in the three
  // case families, when a witness exists.
  int64_t claim_comparisons = 0;
  int64_t claim_violations = 0;
};

BonusPointCheck CheckBonusPoint(MechanismPtr reference,
                                const OthersProfile& profile, int k,
                                const Rational& p, const Rational& t,
                                const ProjectionMatrix& projection,
                                const Formula& formula,
                                const SubmenuParams& params, uint64_t seed);

struct Claim25Options {
  int ell = 3;
  int family_size = 65;
  int trials = 10000;
  uint64_t seed = 0;
  // Zero means 2 ell + 2.
  int num_items = 0;
  int workers = 1;
  // Keep the per-trial miss flags in the report.
  bool keep_trace = false;
};

struct Claim25Report {
  int ell = 0;
  int num_items = 0;
  int family_size = 0;
  int trials = 0;
  Assignment target;
  // Trials with no family member projecting onto the target.
  int64_t misses = 0;
  double miss_rate = 0;
  double bound = 0;
  double bound_sigma = 0;
  bool within_bound = false;
  // A fixed pair S != S' of the family: both project onto the target.
  int64_t pair_hits = 0;
  double pair_rate = 0;
  double pair_expected = 0;
  double pair_sigma = 0;
  bool pair_within = false;
  // A single fixed member projects onto the target.
  int64_t single_hits = 0;
  double single_rate = 0;
  double single_expected = 0;
  // Per-trial miss flags when requested; trial t used seed
  // DeriveSeed(seed, t + 1).
  std::vector<uint8_t> miss_trace;
};

Claim25Report VerifyClaim25(const Claim25Options& options);

}  // namespace truthbench

#endif  // TRUTHBENCH_REDUCE_CA_H_
