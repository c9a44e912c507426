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

#include "truthbench/menus.h"

#include <string>
#include <utility>

#include "truthbench/errors.h"

namespace truthbench {
namespace {

class VcgMenu : public TaxationMenu {
 public:
  explicit VcgMenu(const OthersProfile& profile)
      : num_items_(profile.num_items),
        others_best_(
            MaxWelfareByAvailableSet(profile.others, profile.num_items)) {}

  int num_items() const override { return num_items_; }
  bool OnMenu(Bundle) const override { return true; }
  Rational OnMenuPrice(Bundle s) const override {
    const Bundle full = Bundle::Full(num_items_);
    return others_best_[full.mask()] - others_best_[(full - s).mask()];
  }

 private:
  int num_items_;
  std::vector<Rational> others_best_;
};

class SingleEntryMenu : public TaxationMenu {
 public:
  SingleEntryMenu(int num_items, Bundle entry)
      : num_items_(num_items), entry_(entry) {}

  int num_items() const override { return num_items_; }
  bool OnMenu(Bundle s) const override { return s == entry_; }
  Rational OnMenuPrice(Bundle) const override { return 0; }

 private:
  int num_items_;
  Bundle entry_;
};

bool InWindow(const Rational& price, const Rational& p,
              const Rational& eps_window) {
  return price > p - eps_window && price <= p;
}

}  // namespace

Instance OthersProfile::With(ValuationPtr own) const {
  if (bidder < 0 || bidder > static_cast<int>(others.size())) {
    throw InputError("special bidder index out of range");
  }
  Instance instance{num_items, others};
  instance.valuations.insert(instance.valuations.begin() + bidder,
                             std::move(own));
  instance.Validate();
  return instance;
}

std::string MenuPrice::ToString() const {
  return value ? FormatRational(*value) : "inf";
}

MenuPrice TaxationMenu::Price(Bundle s) const {
  if (OnMenu(s)) return MenuPrice{OnMenuPrice(s)};
  const int m = num_items();
  if (m > 24) throw CapExceeded("superset scan items", m, 24);
  const uint64_t free = (Bundle::Full(m) - s).mask();
  MenuPrice best = MenuPrice::Infinite();
  for (uint64_t extra = free; extra != 0; extra = (extra - 1) & free) {
    const Bundle t = s | Bundle(extra);
    if (!OnMenu(t)) continue;
    Rational price = OnMenuPrice(t);
    if (best.infinite() || price < *best.value) best.value = std::move(price);
  }
  return best;
}

std::unique_ptr<TaxationMenu> ReferenceMenu(const Mechanism& mechanism,
                                            const OthersProfile& profile) {
  if (dynamic_cast<const VcgMechanism*>(&mechanism) != nullptr) {
    return std::make_unique<VcgMenu>(profile);
  }
  if (const auto* dictator =
          dynamic_cast<const DictatorMechanism*>(&mechanism)) {
    const Bundle entry = dictator->bidder() == profile.bidder
                             ? Bundle::Full(profile.num_items)
                             : Bundle();
    return std::make_unique<SingleEntryMenu>(profile.num_items, entry);
  }
  throw Unsupported("no closed-form menu for mechanism " + mechanism.name());
}

MenuPrice MenuPriceOracle(const Mechanism& mechanism,
                          const OthersProfile& profile, Bundle s) {
  if (!s.WithinGround(profile.num_items)) {
    throw InputError("bundle outside the ground set");
  }
  return ReferenceMenu(mechanism, profile)->Price(s);
}

SubmenuParams SubmenuParams::Defaults(int num_items, int k, Rational p) {
  SubmenuParams params;
  params.k = k;
  params.p = std::move(p);
  params.eps_window = InversePower(num_items, 5);
  params.eps_gap = InversePower(num_items, 3);
  params.eps_probe = InversePower(num_items, 6);
  return params;
}

void SubmenuParams::Validate() const {
  if (eps_probe <= 0 || eps_window <= 0 || eps_gap <= 0) {
    throw InputError("submenu epsilons must be positive");
  }
  if (eps_probe > eps_window || eps_window > eps_gap) {
    throw InputError("submenu epsilons must satisfy probe <= window <= gap");
  }
}

std::vector<Bundle> EnumerateStructuredSubmenu(const TaxationMenu& menu,
                                               const SubmenuParams& params) {
  params.Validate();
  const int m = menu.num_items();
  if (m > kSubmenuEnumerationCap) {
    throw CapExceeded("structured submenu items", m, kSubmenuEnumerationCap);
  }
  if (params.k < 0 || params.k > m) return {};
  const uint64_t count = uint64_t{1} << m;
  std::vector<std::optional<Rational>> on_menu(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    if (menu.OnMenu(Bundle(mask))) on_menu[mask] = menu.OnMenuPrice(Bundle(mask));
  }
  std::vector<Bundle> out;
  for (Bundle s : KSubsets(m, params.k)) {
    const auto& price = on_menu[s.mask()];
    if (!price || !InWindow(*price, params.p, params.eps_window)) continue;
    const uint64_t free = (Bundle::Full(m) - s).mask();
    bool gap_ok = true;
    for (uint64_t extra = free; extra != 0 && gap_ok;
         extra = (extra - 1) & free) {
      const auto& larger = on_menu[s.mask() | extra];
      if (larger && *larger - *price < params.eps_gap) gap_ok = false;
    }
    if (gap_ok) out.push_back(s);
  }
  return out;
}

std::vector<Bundle> EnumerateStructuredSubmenu(const Mechanism& mechanism,
                                               const OthersProfile& profile,
                                               const SubmenuParams& params) {
  return EnumerateStructuredSubmenu(*ReferenceMenu(mechanism, profile),
                                    params);
}

MenuProber::MenuProber(MechanismPtr mechanism, OthersProfile profile,
                       Rational p, Rational eps_window, Rational eps_probe,
                       uint64_t seed)
    : mechanism_(std::move(mechanism)),
      profile_(std::move(profile)),
      p_(std::move(p)),
      eps_window_(std::move(eps_window)),
      eps_probe_(std::move(eps_probe)),
      seed_(seed) {
  if (!mechanism_) throw InputError("prober needs a mechanism");
  if (p_ < 0) throw InputError("probe price level must be nonnegative");
  if (eps_window_ <= 0 || eps_probe_ <= 0) {
    throw InputError("probe epsilons must be positive");
  }
}

int64_t MenuProber::mechanism_runs() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return static_cast<int64_t>(cache_.size());
}

ProbeStep MenuProber::Observe(Bundle s, int perturbed_item) const {
  const auto key = std::make_pair(s.mask(), perturbed_item);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const int m = profile_.num_items;
  ProbeStep step;
  step.purpose = perturbed_item < 0
                     ? std::string("base")
                     : "perturb:" + std::to_string(perturbed_item);
  step.report.assign(m, Rational(0));
  for (int j : s.Items()) step.report[j] = 2 * p_;
  if (perturbed_item >= 0) step.report[perturbed_item] = eps_probe_;
  const Instance instance =
      profile_.With(std::make_shared<AdditiveValuation>(step.report));
  const uint64_t seed =
      DeriveSeed(DeriveSeed(seed_, s.mask()), perturbed_item + 1);
  const Outcome outcome = mechanism_->Run(instance, seed);
  ValidateOutcome(instance, outcome);
  step.returned = outcome.allocation[profile_.bidder];
  step.price = outcome.payments[profile_.bidder];
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, step);
  return step;
}

CandidacyVerdict MenuProber::Probe(Bundle s, int k) const {
  if (!s.WithinGround(profile_.num_items)) {
    throw InputError("probed bundle outside the ground set");
  }
  CandidacyVerdict verdict;
  if (s.size() < k) return verdict;
  const ProbeStep base = Observe(s, -1);
  verdict.transcript.push_back(base);

  if (s.size() == k) {
    if (base.returned != s) return verdict;
    verdict.observed_price = base.price;
    if (!InWindow(base.price, p_, eps_window_)) return verdict;
    for (int j = 0; j < profile_.num_items; ++j) {
      if (s.Contains(j)) continue;
      ProbeStep step = Observe(s, j);
      const bool kept = step.returned == s;
      verdict.transcript.push_back(std::move(step));
      if (!kept) return verdict;
    }
    verdict.is_candidate = true;
    return verdict;
  }

  // |S| > k: decide whether the menu price of S exceeds p.
  if (base.returned == s) {
    verdict.observed_price = base.price;
    verdict.price_exceeds_p = base.price > p_;
  } else if (!s.IsSubsetOf(base.returned)) {
    // Some item of S was dropped although it is worth 2p to the bidder.
    verdict.price_exceeds_p = true;
  } else {
    // S strictly inside S': both have the same value, so the same price.
    verdict.observed_price = base.price;
    verdict.price_exceeds_p = base.price > p_;
  }
  return verdict;
}

bool MenuProber::Predicate(Bundle s, int k) const {
  CandidacyVerdict verdict = Probe(s, k);
  return verdict.is_candidate || verdict.price_exceeds_p.value_or(false);
}

CandidacyVerdict ProbeCandidate(MechanismPtr mechanism,
                                const OthersProfile& profile, Bundle s,
                                const SubmenuParams& params, uint64_t seed) {
  params.Validate();
  MenuProber prober(std::move(mechanism), profile, params.p, params.eps_window,
                    params.eps_probe, seed);
  return prober.Probe(s, params.k);
}

PredicatePtr ProbePredicate(std::shared_ptr<const MenuProber> prober, int k) {
  std::string description = "probe:k=" + std::to_string(k) +
                            ",p=" + FormatRational(prober->p());
  return std::make_shared<FunctionPredicate>(
      [prober = std::move(prober), k](Bundle s) {
        return prober->Predicate(s, k);
      },
      std::move(description));
}

std::vector<DensitySample> SampleDensityMenu(const Mechanism& mechanism,
                                             const OthersProfile& profile,
                                             const DensityOptions& options,
                                             const ReportStrategy& strategy) {
  const int m = profile.num_items;
  if (options.trials < 1) throw InputError("density sampling needs trials >= 1");
  if (options.ell < 0 || options.level < 0 || options.level > options.ell ||
      options.ell > 30) {
    throw InputError("density level must lie in [0, ell]");
  }
  if (options.omega_grid.empty()) throw InputError("omega grid is empty");
  const int64_t scaled = static_cast<int64_t>(m) << options.level;
  if (scaled % (int64_t{1} << options.ell) != 0) {
    throw InputError("2^(j - ell) m must be an integer");
  }
  const int size = static_cast<int>(scaled >> options.ell);
  if (size < 1) throw InputError("desired set would be empty");
  std::vector<DensitySample> samples;
  for (int trial = 0; trial < options.trials; ++trial) {
    Rng rng(DeriveSeed(options.seed, trial));
    DensitySample sample;
    sample.desired = Bundle::FromItems(rng.Sample(m, size));
    sample.omega = options.omega_grid[trial % options.omega_grid.size()];
    ValuationPtr report =
        strategy ? strategy(m, sample.desired, sample.omega)
                 : std::make_shared<PolarAdditiveValuation>(m, sample.desired,
                                                            sample.omega);
    const Instance instance = profile.With(std::move(report));
    const Outcome outcome = mechanism.Run(instance, rng.Next());
    sample.returned = outcome.allocation[profile.bidder];
    sample.x = Rational((sample.desired & sample.returned).size(), size);
    sample.x.canonicalize();
    sample.price = outcome.payments[profile.bidder];
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace truthbench
