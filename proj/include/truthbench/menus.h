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

#ifndef TRUTHBENCH_MENUS_H_
#define TRUTHBENCH_MENUS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "truthbench/bundle.h"
#include "truthbench/mechanisms.h"
#include "truthbench/rational.h"
#include "truthbench/rng.h"
#include "truthbench/valuations.h"

namespace truthbench {

// The reports of every bidder except `bidder`, in bidder order.
struct OthersProfile {
  int num_items = 0;
  int bidder = 0;
  std::vector<ValuationPtr> others;

  int num_bidders() const { return static_cast<int>(others.size()) + 1; }
  // The full instance with `own` inserted at position `bidder`.
  Instance With(ValuationPtr own) const;
};

// A price in [0, inf]; empty means +infinity.
struct MenuPrice {
  std::optional<Rational> value;

  static MenuPrice Infinite() { return MenuPrice{}; }
  bool infinite() const { return !value.has_value(); }
  std::string ToString() const;

  friend bool operator==(const MenuPrice&, const MenuPrice&) = default;
};

// The menu a reference mechanism offers one bidder given the others.
class TaxationMenu {
 public:
  virtual ~TaxationMenu() = default;
  virtual int num_items() const = 0;
  virtual bool OnMenu(Bundle s) const = 0;
  // Only meaningful for bundles on the menu.
  virtual Rational OnMenuPrice(Bundle s) const = 0;

  // On-menu price, else the cheapest on-menu strict superset, else +inf.
  MenuPrice Price(Bundle s) const;
};

// VCG: every bundle is on the menu at (others' optimum on M) minus (others'
// optimum on M \ S). Dictator: only M (for the dictator) or only the empty
// set (for everyone else), at price 0. Other mechanisms throw Unsupported.
std::unique_ptr<TaxationMenu> ReferenceMenu(const Mechanism& mechanism,
                                            const OthersProfile& profile);

MenuPrice MenuPriceOracle(const Mechanism& mechanism,
                          const OthersProfile& profile, Bundle s);

struct SubmenuParams {
  int k = 1;
  Rational p;
  // Price window (p - eps_window, p].
  Rational eps_window;
  // Required price gap to every on-menu strict superset.
  Rational eps_gap;
  // Perturbation used by the black-box probe.
  Rational eps_probe;

  // eps_window = 1/m^5, eps_gap = 1/m^3, eps_probe = 1/m^6.
  static SubmenuParams Defaults(int num_items, int k, Rational p);
  // Throws InputError unless 0 < eps_probe <= eps_window <= eps_gap.
  void Validate() const;
};

inline constexpr int kSubmenuEnumerationCap = 10;

// Every S with |S| = k that is on the menu, is priced in
// (p - eps_window, p], and is at least eps_gap cheaper than each on-menu
// strict superset.
std::vector<Bundle> EnumerateStructuredSubmenu(const Mechanism& mechanism,
                                               const OthersProfile& profile,
                                               const SubmenuParams& params);
std::vector<Bundle> EnumerateStructuredSubmenu(const TaxationMenu& menu,
                                               const SubmenuParams& params);

struct ProbeStep {
  // "base" or "perturb:<j>".
  std::string purpose;
  std::vector<Rational> report;
  Bundle returned;
  Rational price;
};

struct CandidacyVerdict {
  bool is_candidate = false;
  // Set when |S| > k: whether the price of S was shown to exceed p.
  std::optional<bool> price_exceeds_p;
  // The menu price of S when a run revealed it.
  std::optional<Rational> observed_price;
  std::vector<ProbeStep> transcript;
};

// Black-box probing of one bidder's menu at price level p. Each run of the
// mechanism is cached, so probes for different k (and bonus valuations built
// on them) share work. Thread-safe.
class MenuProber {
 public:
  MenuProber(MechanismPtr mechanism, OthersProfile profile, Rational p,
             Rational eps_window, Rational eps_probe, uint64_t seed);

  // The candidacy procedure for bundle s at size parameter k.
  CandidacyVerdict Probe(Bundle s, int k) const;
  // The monotone menu predicate built from Probe: 1 for size-k candidates
  // and for larger bundles priced above p.
  bool Predicate(Bundle s, int k) const;

  const OthersProfile& profile() const { return profile_; }
  const Rational& p() const { return p_; }
  int64_t mechanism_runs() const;

 private:
  ProbeStep Observe(Bundle s, int perturbed_item) const;

  MechanismPtr mechanism_;
  OthersProfile profile_;
  Rational p_;
  Rational eps_window_;
  Rational eps_probe_;
  uint64_t seed_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<uint64_t, int>, ProbeStep> cache_;
};

// Convenience wrapper around a throwaway prober.
CandidacyVerdict ProbeCandidate(MechanismPtr mechanism,
                                const OthersProfile& profile, Bundle s,
                                const SubmenuParams& params, uint64_t seed);

// Wraps prober->Predicate(., k) as a bonus-valuation predicate handle.
PredicatePtr ProbePredicate(std::shared_ptr<const MenuProber> prober, int k);

struct DensitySample {
  Bundle desired;
  Bundle returned;
  Rational omega;
  // |desired n returned| / |desired|.
  Rational x;
  Rational price;
};

struct DensityOptions {
  // Level j in [0, ell]; the desired set has 2^(j - ell) m items.
  int level = 0;
  int ell = 1;
  int trials = 1;
  uint64_t seed = 0;
  // The reported polar valuation uses omega_grid[trial % size].
  std::vector<Rational> omega_grid = {Rational(1, 8), Rational(1, 4),
                                      Rational(1, 2)};
};

// Maps a drawn desired set and omega to the reported valuation. The default
// reports the polar additive valuation v_{A, omega}.
using ReportStrategy =
    std::function<ValuationPtr(int num_items, Bundle desired,
                               const Rational& omega)>;

std::vector<DensitySample> SampleDensityMenu(
    const Mechanism& mechanism, const OthersProfile& profile,
    const DensityOptions& options, const ReportStrategy& strategy = nullptr);

}  // namespace truthbench

#endif  // TRUTHBENCH_MENUS_H_
