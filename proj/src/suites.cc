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

#include "truthbench/suites.h"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include "truthbench/bundle.h"
#include "truthbench/mechanisms.h"
#include "truthbench/menus.h"
#include "truthbench/parallel.h"
#include "truthbench/reduce_ca.h"
#include "truthbench/reduce_tie.h"
#include "truthbench/rng.h"
#include "truthbench/satkit.h"
#include "truthbench/valuations.h"

namespace truthbench {
namespace {

constexpr size_t kMaxFailures = 10;

struct CaseResult {
  int64_t cases = 0;
  int64_t checks = 0;
  int64_t violations = 0;
  std::vector<std::string> failures;

  void Check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (failures.size() < kMaxFailures) failures.push_back(what);
  }
};

SuiteResult Collect(std::string name, std::vector<CaseResult>& parts) {
  SuiteResult out;
  out.name = std::move(name);
  for (CaseResult& part : parts) {
    out.cases += part.cases;
    out.checks += part.checks;
    out.violations += part.violations;
    for (std::string& f : part.failures) {
      if (out.failures.size() < kMaxFailures) out.failures.push_back(std::move(f));
    }
  }
  return out;
}

template <typename Fn>
SuiteResult RunCases(std::string name, int64_t count, int workers, Fn fn) {
  std::vector<CaseResult> parts(count);
  ParallelFor(count, workers, [&](int64_t i) { fn(i, parts[i]); });
  return Collect(std::move(name), parts);
}

std::vector<int> ShuffledIota(int n, Rng& rng) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  rng.Shuffle(out);
  return out;
}

Bundle FromItems(const std::vector<int>& items) {
  Bundle out;
  for (int i : items) out = out.With(i);
  return out;
}

Assignment RandomAssignment(int n, Rng& rng) {
  Assignment x(n);
  for (int i = 0; i < n; ++i) x.Set(i, rng.Bit());
  return x;
}

// One encoded-family case: support size, code, formula kind, alpha, beta.
struct EncodedCase {
  int support;
  CodeSpec code;
  bool satisfiable;
  Rational alpha;
  Rational beta;
};

std::vector<EncodedCase> EncodedCases(const SuiteOptions& options) {
  std::vector<EncodedCase> out;
  for (int support : options.supports) {
    for (const Rational& beta : options.betas) {
      for (const CodeSpec& code : SuiteCodes(support, beta)) {
        for (bool sat : {true, false}) {
          for (const Rational& alpha : options.alphas) {
            out.push_back({support, code, sat, alpha, beta});
          }
        }
      }
    }
  }
  return out;
}

struct EncodedFixture {
  std::vector<int> order;
  Formula formula;
  std::optional<Assignment> planted;
};

EncodedFixture MakeEncodedFixture(const EncodedCase& c, uint64_t seed) {
  Rng rng(seed);
  const int vars = c.code.message_length();
  EncodedFixture f{ShuffledIota(c.support, rng), Formula(1, {{1}}), {}};
  if (c.satisfiable) {
    f.planted = RandomAssignment(vars, rng);
    f.formula = PlantUniqueSat(*f.planted, rng.Next());
  } else {
    f.formula = RandomUnsat(vars, 8 * vars, rng.Next());
  }
  return f;
}

std::string Describe(const EncodedCase& c) {
  std::ostringstream out;
  out << "|C|=" << c.support << " " << CodeKindName(c.code.kind()) << "("
      << c.code.message_length() << "," << c.code.codeword_length() << ")"
      << (c.satisfiable ? " sat" : " unsat") << " alpha=" << c.alpha
      << " beta=" << c.beta;
  return out.str();
}

}  // namespace

std::vector<CodeSpec> SuiteCodes(int support, const Rational& beta) {
  const int length = support / 2;
  std::vector<CodeSpec> out;
  out.push_back(CodeSpec::Repetition(length, 1, beta));
  for (int repeat : {2, 3}) {
    if (length % repeat == 0 && length / repeat >= 1) {
      out.push_back(CodeSpec::Repetition(length / repeat, repeat, beta));
    }
  }
  out.push_back(
      CodeSpec::RandomLinear(std::min(3, length), length, 1000 + length, beta));
  return out;
}

SuiteResult BonusStructuralSuite(const SuiteOptions& options) {
  const int span = std::max(1, options.max_m - 1);
  return RunCases(
      "bonus_structural", options.bonus_count, options.workers,
      [&](int64_t i, CaseResult& r) {
        Rng rng(DeriveSeed(options.seed, i));
        const int m = 2 + static_cast<int>(i % span);
        const int k = 1 + static_cast<int>(rng.Uniform(m));
        const Rational t = i % 3 == 0   ? Rational(m + 1)
                           : i % 3 == 1 ? PowerOfTwo(2 * m)
                                        : Rational(m) * PowerOfTwo(m) + 1;
        std::vector<Bundle> generators;
        const int count = 1 + static_cast<int>(rng.Uniform(4));
        for (int g = 0; g < count; ++g) {
          generators.push_back(Bundle(rng.Next() & ((uint64_t{1} << m) - 1)));
        }
        PredicatePtr menu = UpClosurePredicate(generators);
        std::vector<bool> table(size_t{1} << m);
        for (size_t s = 0; s < table.size(); ++s) table[s] = rng.Bit();
        auto bonus = std::make_shared<TruthTablePredicate>(m, table);
        const std::string tag = "bonus case " + std::to_string(i) +
                                " m=" + std::to_string(m) +
                                " k=" + std::to_string(k);
        ++r.cases;
        r.Check(IsMonotonePredicate(*menu, m), tag + ": P not monotone");
        const BonusValuation v(m, t, k, menu, bonus);
        r.Check(v.Value(Bundle()) == 0, tag + ": v(empty) != 0");
        r.Check(CheckMonotone(v), tag + ": not monotone");
        r.Check(CheckSubmodular(v), tag + ": not submodular");
      });
}

SuiteResult DoublePeakStructuralSuite(const SuiteOptions& options) {
  const int largest =
      *std::max_element(options.supports.begin(), options.supports.end());
  struct Case {
    int support;
    Rational alpha;
    Rational beta;
  };
  std::vector<Case> cases;
  for (int support = 2; support <= largest; support += 2) {
    for (const Rational& alpha : options.alphas) {
      for (const Rational& beta : options.betas) {
        cases.push_back({support, alpha, beta});
      }
    }
  }
  return RunCases(
      "double_peak_structural", static_cast<int64_t>(cases.size()),
      options.workers, [&](int64_t i, CaseResult& r) {
        const Case& c = cases[i];
        Rng rng(DeriveSeed(options.seed, i));
        const std::vector<int> order = ShuffledIota(c.support, rng);
        const Bundle a = FromItems({order.begin(), order.begin() + c.support / 2});
        const Bundle b = Bundle::Full(c.support) - a;
        std::ostringstream tag;
        tag << "|C|=" << c.support << " alpha=" << c.alpha
            << " beta=" << c.beta;
        const DoublePeakValuation f(c.support, a, b, c.alpha, c.beta);
        const SymmetricDoublePeak fbar(c.support, a | b, c.alpha);
        r.cases += 2;
        r.Check(CheckMonotone(f), tag.str() + ": double-peak not monotone");
        r.Check(CheckSubmodular(f), tag.str() + ": double-peak not submodular");
        r.Check(CheckMonotone(fbar), tag.str() + ": symmetric not monotone");
        r.Check(CheckSubmodular(fbar), tag.str() + ": symmetric not submodular");
      });
}

SuiteResult EncodedStructuralSuite(const SuiteOptions& options) {
  const std::vector<EncodedCase> cases = EncodedCases(options);
  return RunCases(
      "encoded_structural", static_cast<int64_t>(cases.size()),
      options.workers, [&](int64_t i, CaseResult& r) {
        const EncodedCase& c = cases[i];
        const EncodedFixture f = MakeEncodedFixture(c, DeriveSeed(options.seed, i));
        const EncodedDoublePeak v(c.support, f.order, f.formula, c.code,
                                  c.alpha, c.beta);
        ++r.cases;
        r.Check(CheckMonotone(v), Describe(c) + ": not monotone");
        r.Check(CheckSubmodular(v), Describe(c) + ": not submodular");
      });
}

SuiteResult EncodedOracleSuite(const SuiteOptions& options) {
  const std::vector<EncodedCase> cases = EncodedCases(options);
  return RunCases(
      "encoded_oracle", static_cast<int64_t>(cases.size()), options.workers,
      [&](int64_t i, CaseResult& r) {
        const EncodedCase& c = cases[i];
        const EncodedFixture f = MakeEncodedFixture(c, DeriveSeed(options.seed, i));
        const EncodedDoublePeak v(c.support, f.order, f.formula, c.code,
                                  c.alpha, c.beta);
        std::unique_ptr<Valuation> oracle;
        if (f.planted) {
          // The partition from the codeword, read straight off the order.
          const BitString y = c.code.Encode(*f.planted);
          const int length = c.code.codeword_length();
          Bundle a;
          for (int p = 0; p < length; ++p) {
            a = a.With(f.order[y[p] ? length + p : p]);
          }
          oracle = std::make_unique<DoublePeakValuation>(
              c.support, a, Bundle::Full(c.support) - a, c.alpha, c.beta);
        } else {
          oracle = std::make_unique<SymmetricDoublePeak>(
              c.support, Bundle::Full(c.support), c.alpha);
        }
        ++r.cases;
        int64_t mismatches = 0;
        for (uint64_t mask = 0; mask < (uint64_t{1} << c.support); ++mask) {
          if (v.Value(Bundle(mask)) != oracle->Value(Bundle(mask))) {
            ++mismatches;
          }
        }
        r.checks += (int64_t{1} << c.support) - 1;
        r.Check(mismatches == 0, Describe(c) + ": " +
                                     std::to_string(mismatches) +
                                     " subsets differ");
      });
}

SuiteResult ProbeEquivalenceSuite(const SuiteOptions& options) {
  const int span = std::max(1, options.menu_max_m - 3);
  const MechanismPtr vcg = std::make_shared<VcgMechanism>();
  return RunCases(
      "probe_equivalence", options.probe_combos, options.workers,
      [&](int64_t i, CaseResult& r) {
        Rng rng(DeriveSeed(options.seed, i));
        const int m = 4 + static_cast<int>(i % span);
        const int n = m <= 6 ? 2 + static_cast<int>(i % 2) : 2;
        OthersProfile profile{m, static_cast<int>(rng.Uniform(n)), {}};
        for (int j = 0; j + 1 < n; ++j) {
          profile.others.push_back(SampleRandomPolar(m, n, rng.Next()));
        }
        const int k = 1 + static_cast<int>(rng.Uniform(m));
        const auto subsets = KSubsets(m, k);
        const std::unique_ptr<TaxationMenu> menu =
            ReferenceMenu(*vcg, profile);
        const Rational anchor =
            *menu->Price(subsets[rng.Uniform(subsets.size())]).value;
        const Rational window = InversePower(m, 5);
        Rational p;
        switch (i % 4) {
          case 0:
            p = anchor;
            break;
          case 1:
            p = anchor + window / 2;
            break;
          case 2:
            p = anchor - window;
            break;
          default:
            p = Rational(1 + static_cast<long>(rng.Uniform(m * 8))) / 8;
        }
        if (p <= 0) p = anchor;
        const SubmenuParams params = SubmenuParams::Defaults(m, k, p);
        const std::vector<Bundle> submenu =
            EnumerateStructuredSubmenu(*menu, params);
        const std::set<uint64_t> members = [&] {
          std::set<uint64_t> out;
          for (Bundle s : submenu) out.insert(s.mask());
          return out;
        }();
        ++r.cases;
        for (Bundle s : subsets) {
          const bool probed =
              ProbeCandidate(vcg, profile, s, params, rng.Next()).is_candidate;
          r.Check(probed == (members.count(s.mask()) > 0),
                  "combo " + std::to_string(i) + " m=" + std::to_string(m) +
                      " k=" + std::to_string(k) + " S=" + s.ToString());
        }
      });
}

SuiteResult BonusPointSuite(const SuiteOptions& options) {
  const int span = std::max(1, options.bonus_point_max_m - 3);
  const MechanismPtr vcg = std::make_shared<VcgMechanism>();
  return RunCases(
      "bonus_point", options.bonus_point_fixtures, options.workers,
      [&](int64_t f, CaseResult& r) {
        Rng rng(DeriveSeed(options.seed, f));
        const int m = 4 + static_cast<int>(f % span);
        OthersProfile profile{m, static_cast<int>(rng.Uniform(2)),
                              {SampleRandomPolar(m, 2, rng.Next())}};
        const Assignment planted = RandomAssignment(2, rng);
        const Formula phi = PlantUniqueSat(planted, rng.Next());
        const ProjectionMatrix t = ProjectionMatrix::Random(2, m, rng.Next());
        const Rational scale = BonusScale(m, BonusScaleMode::kExponential);
        const std::unique_ptr<TaxationMenu> menu = ReferenceMenu(*vcg, profile);
        for (int k = 1; k <= m; ++k) {
          std::set<Rational> prices;
          for (Bundle s : KSubsets(m, k)) {
            const Rational p = *menu->Price(s).value;
            if (p > 0) prices.insert(p);
          }
          for (const Rational& p : prices) {
            const SubmenuParams params = SubmenuParams::Defaults(m, k, p);
            const BonusPointCheck check = CheckBonusPoint(
                vcg, profile, k, p, scale, t, phi, params, rng.Next());
            std::ostringstream tag;
            tag << "fixture " << f << " m=" << m << " k=" << k << " p=" << p;
            r.Check(check.predicate_mismatches == 0,
                    tag.str() + ": probe predicate disagrees with submenu");
            if (!check.witness) continue;
            ++r.cases;
            r.Check(check.returned_bonus,
                    tag.str() + ": returned bundle has B = 0");
            r.checks += check.claim_comparisons;
            r.Check(check.claim_violations == 0,
                    tag.str() + ": " + std::to_string(check.claim_violations) +
                        " utility comparisons fail");
          }
        }
      });
}

}  // namespace truthbench
