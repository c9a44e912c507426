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

#include "truthbench/reduce_ca.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <set>
#include <string>
#include <utility>

#include "truthbench/errors.h"
#include "truthbench/parallel.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

uint64_t ItemMask(int m) {
  return m == 64 ? ~uint64_t{0} : (uint64_t{1} << m) - 1;
}

uint64_t ProjectPacked(const std::vector<uint64_t>& rows, uint64_t s) {
  uint64_t out = 0;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (std::popcount(rows[r] & s) & 1) out |= uint64_t{1} << r;
  }
  return out;
}

uint64_t PackAssignment(const Assignment& x) {
  uint64_t out = 0;
  for (int r = 0; r < x.size(); ++r) {
    if (x[r]) out |= uint64_t{1} << r;
  }
  return out;
}

// Smallest multiple of `unit` that is >= value.
Rational CeilToGrid(const Rational& value, const Rational& unit) {
  Rational q = value / unit;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c) * unit;
}

std::vector<Rational> Multiples(const Rational& step, int m) {
  if (step <= 0) throw InputError("price step must be positive");
  const Rational count_q = Rational(m) / step;
  if (count_q > 10000000) {
    throw CapExceeded("price grid points", count_q.get_d(), 1e7);
  }
  std::vector<Rational> out;
  for (Rational p = step; p <= m; p += step) out.push_back(p);
  return out;
}

struct SweepResult {
  std::optional<Assignment> assignment;
  std::vector<CATrial> trials;
  int64_t runs = 0;
};

SweepResult RunSweep(const Formula& formula, const MechanismPtr& mechanism,
                     const CAReductionConfig& config, int repeat) {
  SweepResult result;
  const int m = config.num_items;
  const uint64_t sweep_seed = DeriveSeed(config.seed, repeat);
  const OthersProfile profile = DrawProfile(config, repeat);
  const ProjectionMatrix projection = ProjectionMatrix::Random(
      formula.num_vars(), m, DeriveSeed(sweep_seed, 1));
  const std::vector<Rational> grid =
      PriceGrid(config, *mechanism, profile, DeriveSeed(sweep_seed, 2));
  if (config.grid_mode == PriceGridMode::kObserved) {
    result.runs += (int64_t{1} << m) - 1;
  }
  const Rational t = BonusScale(m, config.scale_mode);
  std::vector<int> ks = config.k_values;
  if (ks.empty()) {
    for (int k = 1; k <= m; ++k) ks.push_back(k);
  }
  int64_t point = 0;
  for (size_t pi = 0; pi < grid.size(); ++pi) {
    auto prober = std::make_shared<MenuProber>(
        mechanism, profile, grid[pi], config.EffectiveWindow(),
        config.EffectiveProbe(), DeriveSeed(sweep_seed, 3 + pi));
    for (int k : ks) {
      CATrial trial;
      trial.repeat = repeat;
      trial.seed = DeriveSeed(sweep_seed, 0x100000 + point++);
      trial.bidder = profile.bidder;
      trial.k = k;
      trial.p = grid[pi];
      try {
        auto bonus = BuildBonusFromMechanism(prober, k, t, projection, formula,
                                             config.validate_menu_predicate);
        const Instance instance = profile.With(bonus);
        const Outcome outcome = mechanism->Run(instance, trial.seed);
        ++result.runs;
        ValidateOutcome(instance, outcome);
        trial.returned = outcome.allocation[profile.bidder];
        trial.bonus = bonus->B(trial.returned);
      } catch (const std::exception& e) {
        trial.error = e.what();
      }
      result.trials.push_back(trial);
      if (trial.bonus) {
        Assignment x = projection.Project(trial.returned);
        // Re-verified independently of the predicate handle.
        if (EvalFormula(formula, x)) {
          result.assignment = std::move(x);
          result.runs += prober->mechanism_runs();
          return result;
        }
      }
    }
    result.runs += prober->mechanism_runs();
  }
  return result;
}

}  // namespace

ProjectionMatrix::ProjectionMatrix(int num_items, std::vector<uint64_t> rows)
    : num_items_(num_items), rows_(std::move(rows)) {
  if (num_items < 1 || num_items > Bundle::kMaxItems) {
    throw InputError("projection width must lie in [1, 64]");
  }
  if (rows_.empty() || rows_.size() > 64) {
    throw InputError("projection needs 1..64 rows");
  }
  for (uint64_t row : rows_) {
    if (row & ~ItemMask(num_items)) {
      throw InputError("projection row has bits beyond m");
    }
  }
}

ProjectionMatrix ProjectionMatrix::Random(int ell, int num_items,
                                          uint64_t seed) {
  if (ell < 1 || ell > 64) throw InputError("ell must lie in [1, 64]");
  Rng rng(seed);
  std::vector<uint64_t> rows(ell);
  for (uint64_t& row : rows) row = rng.Next() & ItemMask(num_items);
  return ProjectionMatrix(num_items, std::move(rows));
}

BitString ProjectionMatrix::Column(int column) const {
  BitString out(ell());
  for (int r = 0; r < ell(); ++r) out.Set(r, Entry(r, column));
  return out;
}

Assignment ProjectionMatrix::Project(Bundle s) const {
  if (!s.WithinGround(num_items_)) {
    throw InputError("projected bundle outside the ground set");
  }
  const uint64_t packed = ProjectPacked(rows_, s.mask());
  BitString out(ell());
  for (int r = 0; r < ell(); ++r) out.Set(r, (packed >> r) & 1);
  return out;
}

PredicatePtr SatisfiesAfterProjection(const Formula& formula,
                                      const ProjectionMatrix& projection) {
  if (formula.num_vars() != projection.ell()) {
    throw InputError("projection height must equal the number of variables");
  }
  return std::make_shared<FunctionPredicate>(
      [formula, projection](Bundle s) {
        return EvalFormula(formula, projection.Project(s));
      },
      "sat-projection");
}

Rational BonusScale(int num_items, BonusScaleMode mode) {
  if (mode == BonusScaleMode::kExponential) {
    if (num_items > 16) {
      throw CapExceeded("exponential bonus scale items", num_items, 16);
    }
    return PowerOfTwo(2 * num_items);
  }
  return Rational(num_items) * PowerOfTwo(num_items) + 1;
}

std::shared_ptr<const BonusValuation> BuildBonusFromMechanism(
    std::shared_ptr<const MenuProber> prober, int k, const Rational& t,
    const ProjectionMatrix& projection, const Formula& formula,
    bool validate_menu_predicate) {
  const int m = prober->profile().num_items;
  if (projection.num_items() != m) {
    throw InputError("projection width must equal m");
  }
  BonusValuation::Options options;
  options.validate_monotone = validate_menu_predicate;
  return std::make_shared<BonusValuation>(
      m, t, k, ProbePredicate(std::move(prober), k),
      SatisfiesAfterProjection(formula, projection), options);
}

void CAReductionConfig::Validate() const {
  if (num_items < 1 || num_items > 20) {
    throw InputError("reduction m must lie in [1, 20]");
  }
  if (num_bidders < 2) throw InputError("reduction needs n >= 2");
  if (outer_repeats < 1) throw InputError("outer_repeats must be >= 1");
  for (int k : k_values) {
    if (k < 1 || k > num_items) throw InputError("k values must lie in [1, m]");
  }
  SubmenuParams params;
  params.eps_window = EffectiveWindow();
  params.eps_gap = EffectiveGap();
  params.eps_probe = EffectiveProbe();
  params.Validate();
  if (scale_mode == BonusScaleMode::kExponential && num_items > 16) {
    throw InputError("exponential-mode t = 2^(2m) is limited to m <= 16");
  }
}

Rational CAReductionConfig::EffectiveWindow() const {
  return eps_window > 0 ? eps_window : InversePower(num_items, 5);
}

Rational CAReductionConfig::EffectiveGap() const {
  return eps_gap > 0 ? eps_gap : InversePower(num_items, 3);
}

Rational CAReductionConfig::EffectiveProbe() const {
  return eps_probe > 0 ? eps_probe : InversePower(num_items, 6);
}

std::vector<Rational> PriceGrid(const CAReductionConfig& config,
                                const Mechanism& mechanism,
                                const OthersProfile& profile, uint64_t seed) {
  const int m = config.num_items;
  switch (config.grid_mode) {
    case PriceGridMode::kFull:
      return Multiples(config.EffectiveWindow(), m);
    case PriceGridMode::kStep:
      return Multiples(config.price_step, m);
    case PriceGridMode::kExplicit:
      return config.price_values;
    case PriceGridMode::kObserved:
      break;
  }
  const Rational window = config.EffectiveWindow();
  std::set<Rational> seen;
  for (uint64_t mask = 1; mask <= ItemMask(m); ++mask) {
    std::vector<Rational> report(m, Rational(0));
    for (int j : Bundle(mask).Items()) report[j] = 2 * m;
    const Instance instance =
        profile.With(std::make_shared<AdditiveValuation>(std::move(report)));
    const Outcome outcome = mechanism.Run(instance, DeriveSeed(seed, mask));
    const Rational p = CeilToGrid(outcome.payments[profile.bidder], window);
    if (p > 0 && p <= m) seen.insert(p);
  }
  return std::vector<Rational>(seen.begin(), seen.end());
}

OthersProfile DrawProfile(const CAReductionConfig& config, int repeat) {
  const uint64_t sweep_seed = DeriveSeed(config.seed, repeat);
  Rng rng(DeriveSeed(sweep_seed, 0));
  OthersProfile profile;
  profile.num_items = config.num_items;
  profile.bidder = static_cast<int>(rng.Uniform(config.num_bidders));
  for (int i = 0; i + 1 < config.num_bidders; ++i) {
    profile.others.push_back(SampleRandomPolar(
        config.num_items, config.num_bidders, rng.Next(), config.sampling));
  }
  return profile;
}

CAReductionReport RunReductionCA(const Formula& formula,
                                 MechanismPtr mechanism,
                                 const CAReductionConfig& config) {
  config.Validate();
  if (!mechanism) throw InputError("reduction needs a mechanism");
  CAReductionReport report;
  const int block = std::max(1, config.workers);
  for (int start = 0; start < config.outer_repeats; start += block) {
    const int count = std::min(block, config.outer_repeats - start);
    std::vector<SweepResult> results(count);
    ParallelFor(count, config.workers, [&](int64_t i) {
      results[i] = RunSweep(formula, mechanism, config,
                            start + static_cast<int>(i));
    });
    for (int i = 0; i < count; ++i) {
      SweepResult& r = results[i];
      report.repeats_run = start + i + 1;
      report.mechanism_runs += r.runs;
      report.trials.insert(report.trials.end(), r.trials.begin(),
                           r.trials.end());
      if (r.assignment) {
        report.satisfiable = true;
        report.assignment = std::move(r.assignment);
        return report;
      }
    }
  }
  return report;
}

BonusPointCheck CheckBonusPoint(MechanismPtr reference,
                                const OthersProfile& profile, int k,
                                const Rational& p, const Rational& t,
                                const ProjectionMatrix& projection,
                                const Formula& formula,
                                const SubmenuParams& params, uint64_t seed) {
  BonusPointCheck check;
  SubmenuParams point = params;
  point.k = k;
  point.p = p;
  point.Validate();
  const int m = profile.num_items;
  auto prober = std::make_shared<MenuProber>(reference, profile, p,
                                             point.eps_window,
                                             point.eps_probe, seed);
  auto bonus = BuildBonusFromMechanism(prober, k, t, projection, formula);
  const std::unique_ptr<TaxationMenu> menu = ReferenceMenu(*reference, profile);
  check.submenu = EnumerateStructuredSubmenu(*menu, point);
  const std::set<uint64_t> members = [&] {
    std::set<uint64_t> out;
    for (Bundle s : check.submenu) out.insert(s.mask());
    return out;
  }();
  for (Bundle s : KSubsets(m, k)) {
    if (bonus->P(s) != (members.count(s.mask()) > 0)) {
      ++check.predicate_mismatches;
    }
  }
  for (Bundle s : check.submenu) {
    if (bonus->B(s)) {
      check.witness = s;
      break;
    }
  }
  const Instance instance = profile.With(bonus);
  const Outcome outcome = reference->Run(instance, seed);
  check.returned = outcome.allocation[profile.bidder];
  check.returned_bonus = bonus->B(check.returned);
  if (!check.witness) return check;

  const Bundle star = *check.witness;
  const Rational best = bonus->Value(star) - *menu->Price(star).value;
  for (uint64_t mask = 0; mask <= ItemMask(m); ++mask) {
    const Bundle s(mask);
    if (s == star) continue;
    const int size = s.size();
    const bool on_p = size >= k && bonus->P(s);
    const bool in_family = size < k || !on_p || size > k || !bonus->B(s);
    if (!in_family) continue;
    const MenuPrice price = menu->Price(s);
    if (price.infinite()) continue;
    ++check.claim_comparisons;
    if (!(best > bonus->Value(s) - *price.value)) ++check.claim_violations;
  }
  return check;
}

Claim25Report VerifyClaim25(const Claim25Options& options) {
  Claim25Report report;
  report.ell = options.ell;
  report.trials = options.trials;
  report.family_size = options.family_size;
  report.num_items =
      options.num_items > 0 ? options.num_items : 2 * options.ell + 2;
  const int ell = options.ell;
  const int m = report.num_items;
  if (ell < 1 || ell > 12) throw InputError("claim check needs 1 <= ell <= 12");
  if (m > 24) throw CapExceeded("claim check items", m, 24);
  if (options.trials < 1) throw InputError("claim check needs trials >= 1");
  if (static_cast<int64_t>(options.family_size) <= (int64_t{1} << (2 * ell))) {
    throw InputError("family size must exceed 2^(2 ell)");
  }
  if (static_cast<int64_t>(options.family_size) >= (int64_t{1} << m)) {
    throw InputError("family larger than the number of nonempty bundles");
  }
  Rng rng(DeriveSeed(options.seed, 0));
  report.target = BitString::FromInteger(rng.Uniform(uint64_t{1} << ell), ell);
  std::vector<uint64_t> family;
  for (int v : rng.Sample((1 << m) - 1, options.family_size)) {
    family.push_back(static_cast<uint64_t>(v) + 1);
  }
  const uint64_t x = PackAssignment(report.target);

  std::vector<uint8_t> miss(options.trials), pair(options.trials),
      single(options.trials);
  ParallelFor(options.trials, options.workers, [&](int64_t t) {
    const ProjectionMatrix matrix =
        ProjectionMatrix::Random(ell, m, DeriveSeed(options.seed, t + 1));
    const auto& rows = matrix.rows();
    bool hit = false;
    for (uint64_t s : family) {
      if (ProjectPacked(rows, s) == x) {
        hit = true;
        break;
      }
    }
    const bool first = ProjectPacked(rows, family[0]) == x;
    miss[t] = !hit;
    single[t] = first;
    pair[t] = first && ProjectPacked(rows, family[1]) == x;
  });
  for (int t = 0; t < options.trials; ++t) {
    report.misses += miss[t];
    report.pair_hits += pair[t];
    report.single_hits += single[t];
  }
  const double n = options.trials;
  report.miss_rate = report.misses / n;
  report.bound = std::ldexp(1.0, -ell);
  report.bound_sigma = std::sqrt(report.bound * (1 - report.bound) / n);
  report.within_bound = report.miss_rate <= report.bound + 3 * report.bound_sigma;
  report.pair_rate = report.pair_hits / n;
  report.pair_expected = std::ldexp(1.0, -2 * ell);
  report.pair_sigma =
      std::sqrt(report.pair_expected * (1 - report.pair_expected) / n);
  report.pair_within =
      std::abs(report.pair_rate - report.pair_expected) <= 3 * report.pair_sigma;
  report.single_rate = report.single_hits / n;
  report.single_expected = report.bound;
  if (options.keep_trace) report.miss_trace = std::move(miss);
  return report;
}

}  // namespace truthbench
