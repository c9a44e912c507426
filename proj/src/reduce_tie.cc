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

#include "truthbench/reduce_tie.h"

#include <exception>
#include <set>
#include <utility>

#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

Rational Ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

int RequiredRadius(int codeword_length, const Rational& beta) {
  const Rational q = (1 - beta) * codeword_length / 2;
  if (q <= 0) return -1;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<int>(c.get_si()) - 1;
}

EncodedDoublePeak::EncodedDoublePeak(int num_items, std::vector<int> order,
                                     Formula formula, CodeSpec code,
                                     Rational alpha, Rational beta)
    : Valuation(num_items),
      order_(std::move(order)),
      formula_(std::move(formula)),
      code_(std::move(code)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)) {
  const int length = code_.codeword_length();
  if (static_cast<int>(order_.size()) != 2 * length) {
    throw InputError("|C| must equal twice the codeword length");
  }
  for (int item : order_) {
    if (item < 0 || item >= num_items) {
      throw InputError("C contains an item outside the ground set");
    }
    if (support_.Contains(item)) throw InputError("C repeats an item");
    support_ = support_.With(item);
  }
  if (formula_.num_vars() != code_.message_length()) {
    throw InputError("formula variables must equal the message length");
  }
  if (alpha_ <= 0) throw InputError("alpha must be positive");
  if (beta_ <= 0 || beta_ >= 1) throw InputError("beta must lie in (0, 1)");
  if (code_.radius() < RequiredRadius(length, beta_)) {
    throw InputError("decoder radius " + std::to_string(code_.radius()) +
                     " is below the " +
                     std::to_string(RequiredRadius(length, beta_)) +
                     " needed for beta " + FormatRational(beta_));
  }
  status_ = UniqueSatStatus(formula_);
  if (status_ == SatStatus::kMultiple) {
    throw ContractViolation(
        "formula has several satisfying assignments; the encoded function "
        "is undefined");
  }
  if (status_ == SatStatus::kUnique) planted_ = BruteForceSat(formula_)[0];
}

Bundle EncodedDoublePeak::ToLocal(Bundle s) const {
  Bundle local;
  for (size_t p = 0; p < order_.size(); ++p) {
    if (s.Contains(order_[p])) local = local.With(static_cast<int>(p));
  }
  return local;
}

Bundle EncodedDoublePeak::FromLocal(Bundle local) const {
  Bundle out;
  for (int p : local.Items()) out = out.With(order_[p]);
  return out;
}

Bundle EncodedDoublePeak::ExpandMessage(const Assignment& x) const {
  return FromLocal(Expand(code_.Encode(x)));
}

EncodedDoublePeak::Decoding EncodedDoublePeak::Decode(Bundle s) const {
  const int length = code_.codeword_length();
  const Bundle local = ToLocal(s);
  const Bundle sides[2] = {local, Bundle::Full(2 * length) - local};
  std::optional<Assignment> found;
  for (Bundle side : sides) {
    for (bool a : {false, true}) {
      for (const BitString& x : code_.ListDecode(Contract(side, length, a))) {
        if (!EvalFormula(formula_, x)) continue;
        if (found && *found != x) {
          throw ContractViolation("two satisfying assignments decoded");
        }
        found = x;
      }
    }
  }
  Decoding decoding;
  if (!found) return decoding;
  const Bundle a = ExpandMessage(*found);
  const Bundle b = support_ - a;
  const int gap = (s & a).size() - (s & b).size();
  // A satisfying decode of a balanced set leaves the value unchanged; only
  // an unbalanced set fixes the partition.
  if (Rational(gap < 0 ? -gap : gap) > beta_ * length) {
    decoding.assignment = std::move(found);
    decoding.a = a;
    decoding.b = b;
  }
  return decoding;
}

Rational EncodedDoublePeak::Evaluate(Bundle s) const {
  const int length = code_.codeword_length();
  const Decoding d = Decode(s);
  if (!d.assignment) {
    return SymmetricDoublePeak::ValueForCount((s & support_).size(),
                                              2 * length, alpha_);
  }
  return PsiTilde(Ratio((s & d.a).size(), length),
                  Ratio((s & d.b).size(), length), alpha_, beta_);
}

std::optional<ExtractedPartition> ExtractPartition(const EncodedDoublePeak& v,
                                                   Bundle s) {
  if (!s.WithinGround(v.num_items())) {
    throw InputError("bundle outside the ground set");
  }
  EncodedDoublePeak::Decoding d = v.Decode(s);
  if (!d.assignment) return std::nullopt;
  return ExtractedPartition{std::move(*d.assignment), d.a, d.b};
}

BasicInstance BuildBasicInstance(int ell, int m0, const Rational& omega,
                                 uint64_t seed) {
  if (ell < 1 || m0 < 1) throw InputError("basic instance needs ell, m0 >= 1");
  if (ell > 6 || (static_cast<int64_t>(m0) << ell) > Bundle::kMaxItems) {
    throw CapExceeded("basic instance items", static_cast<double>(m0) *
                                                  (int64_t{1} << ell),
                      Bundle::kMaxItems);
  }
  if (omega <= 0) throw InputError("omega must be positive");
  BasicInstance instance;
  instance.ell = ell;
  instance.m0 = m0;
  instance.num_bidders = 1 << ell;
  instance.num_items = m0 << ell;
  instance.omega = omega;
  Rng rng(seed);
  for (int i = 0; i < instance.num_bidders; ++i) {
    Bundle desired;
    for (int item : rng.Sample(instance.num_items, m0)) {
      desired = desired.With(item);
    }
    instance.desired.push_back(desired);
    instance.valuations.push_back(std::make_shared<PolarAdditiveValuation>(
        instance.num_items, desired, omega));
  }
  return instance;
}

Rational BasicOmegaForC(const Rational& c) {
  if (c <= 0) throw InputError("c must be positive");
  return c / 8;
}

CorrelationReport CorrelationExperiment(const Mechanism& mechanism,
                                        const BasicInstance& instance,
                                        const Rational& c, int trials,
                                        uint64_t seed) {
  if (trials < 1) throw InputError("correlation experiment needs trials >= 1");
  if (c <= 0) throw InputError("c must be positive");
  const Instance profile = instance.ToInstance();
  std::vector<long> inter(instance.num_bidders), uni(instance.num_bidders);
  for (int t = 0; t < trials; ++t) {
    const Outcome outcome = mechanism.Run(profile, DeriveSeed(seed, t));
    ValidateOutcome(profile, outcome);
    for (int i = 0; i < instance.num_bidders; ++i) {
      inter[i] += (outcome.allocation[i] & instance.desired[i]).size();
      uni[i] += (outcome.allocation[i] | instance.desired[i]).size();
    }
  }
  CorrelationReport report;
  report.trials = trials;
  for (int i = 0; i < instance.num_bidders; ++i) {
    CorrelationRow row;
    row.bidder = i;
    row.mean_intersection = Ratio(inter[i], trials);
    row.mean_union = Ratio(uni[i], trials);
    row.rhs = (c / 4 - instance.omega) * row.mean_union;
    row.holds = row.mean_intersection > row.rhs;
    report.any_holds = report.any_holds || row.holds;
    report.rows.push_back(std::move(row));
  }
  return report;
}

Rational TieConfig::EffectiveBeta() const {
  return beta > 0 ? beta : InversePower(10, ell);
}

Rational TieConfig::EffectiveOmega() const {
  return omega > 0 ? omega : BasicOmegaForC(Rational(1));
}

Rational TieConfig::MinLambda() const { return Rational(1) / (2 * ell); }

Rational TieConfig::MaxLambda() const {
  return Rational(1) / InversePower(10, ell) * (NumItems() + 2);
}

void TieConfig::Validate() const {
  if (ell < 1 || ell > 6) throw InputError("ell must lie in [1, 6]");
  if (m0 < 1) throw InputError("m0 must be >= 1");
  if (NumItems() > Bundle::kMaxItems) {
    throw CapExceeded("extraction items", NumItems(), Bundle::kMaxItems);
  }
  if (j < 0 || j > 5) throw InputError("j must lie in [0, 5]");
  if (alpha <= 0) throw InputError("alpha must be positive");
  const Rational b = EffectiveBeta();
  if (b >= 1) throw InputError("beta must lie in (0, 1)");
  if (lambda < MinLambda() || lambda > MaxLambda()) {
    throw InputError("lambda outside [1/(2 ell), 10^ell (m + 2)]");
  }
  if (trials < 1) throw InputError("extraction needs trials >= 1");
  if (cpp_k < 0) throw InputError("cpp_k must be >= 0");
}

CodeSpec TieCode(const TieConfig& config, const Formula& formula) {
  CodeSpec base = config.code ? *config.code
                              : CodeSpec::Repetition(formula.num_vars(), 1,
                                                     config.EffectiveBeta());
  if (base.message_length() != formula.num_vars()) {
    throw InputError("code message length must equal the formula's variables");
  }
  return config.j > 0 ? base.Duplicated(1 << config.j) : base;
}

TieReport RunTieExtraction(const Formula& formula, const TieMechanism& mechanism,
                           const TieConfig& config) {
  config.Validate();
  const CodeSpec code = TieCode(config, formula);
  const int support = 2 * code.codeword_length();
  const int m = config.NumItems();
  if (support > m) {
    throw InputError("|C| = " + std::to_string(support) +
                     " exceeds the m = " + std::to_string(m) + " items");
  }
  if (UniqueSatStatus(formula) == SatStatus::kMultiple) {
    throw ContractViolation("formula has several satisfying assignments");
  }
  TieReport report;
  for (int t = 0; t < config.trials; ++t) {
    TieTrial trial;
    trial.trial = t;
    trial.seed = DeriveSeed(config.seed, t);
    Rng rng(trial.seed);
    const BasicInstance basic = BuildBasicInstance(
        config.ell, config.m0, config.EffectiveOmega(), rng.Next());
    trial.bidder = static_cast<int>(rng.Uniform(basic.num_bidders));
    trial.order = rng.Sample(m, support);
    rng.Shuffle(trial.order);
    auto encoded = std::make_shared<EncodedDoublePeak>(
        m, trial.order, formula, code, config.alpha, config.EffectiveBeta());
    auto scaled = std::make_shared<ScaledValuation>(config.lambda, encoded);
    const uint64_t run_seed = rng.Next();
    try {
      if (const auto* ca = std::get_if<MechanismPtr>(&mechanism)) {
        Instance instance = basic.ToInstance();
        instance.valuations[trial.bidder] = scaled;
        const Outcome outcome = (*ca)->Run(instance, run_seed);
        ValidateOutcome(instance, outcome);
        trial.returned = outcome.allocation[trial.bidder];
      } else {
        const auto& cpp = std::get<CppMechanismPtr>(mechanism);
        const int k = config.cpp_k > 0 ? config.cpp_k : support / 2;
        trial.returned = cpp->Run(*scaled, k, run_seed).bundle;
      }
      trial.value = scaled->Value(trial.returned);
      const auto partition = ExtractPartition(*encoded, trial.returned);
      if (partition && EvalFormula(formula, partition->assignment)) {
        trial.extracted = true;
        report.assignment = partition->assignment;
      }
    } catch (const std::exception& e) {
      trial.error = e.what();
    }
    report.trials.push_back(trial);
    report.trials_run = t + 1;
    if (trial.extracted) {
      report.satisfiable = true;
      break;
    }
  }
  return report;
}

}  // namespace truthbench
