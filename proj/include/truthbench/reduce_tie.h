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

#ifndef TRUTHBENCH_REDUCE_TIE_H_
#define TRUTHBENCH_REDUCE_TIE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "truthbench/bundle.h"
#include "truthbench/codes.h"
#include "truthbench/mechanisms.h"
#include "truthbench/rational.h"
#include "truthbench/satkit.h"
#include "truthbench/valuations.h"

namespace truthbench {

// A double-peak valuation encoded by (C, phi, alpha, beta) and a list
// decodable code. Position i of `order` is identified with (i, 0) and
// position L + i with (i, 1), where L is the codeword length.
//
// When phi has a unique satisfying assignment x, A = expand(E(x)) and the
// value is the double-peak function on (A, C \ A); when phi is
// unsatisfiable it is the symmetrized function on C. Values are computed
// from (C, phi, code) alone by decoding contractions of S and C \ S.
class EncodedDoublePeak : public Valuation {
 public:
  // Throws InputError on shape mismatches or when the decoder radius is
  // too small for beta, and ContractViolation when phi has more than one
  // satisfying assignment.
  EncodedDoublePeak(int num_items, std::vector<int> order, Formula formula,
                    CodeSpec code, Rational alpha, Rational beta);

  // The decoded structure behind one evaluation.
  struct Decoding {
    // Set when the unbalanced branch was taken.
    std::optional<Assignment> assignment;
    Bundle a;
    Bundle b;
  };
  Decoding Decode(Bundle s) const;

  // The items of C as a bundle, and A = expand(E(x)) for a message x.
  Bundle support() const { return support_; }
  Bundle ExpandMessage(const Assignment& x) const;
  // The true status and partition, computed by brute force at
  // construction. For test harnesses; Evaluate never reads them.
  SatStatus status() const { return status_; }
  std::optional<Assignment> planted() const { return planted_; }

  const std::vector<int>& order() const { return order_; }
  const Formula& formula() const { return formula_; }
  const CodeSpec& code() const { return code_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  std::string_view family() const override { return "encoded_double_peak"; }

 protected:
  Rational Evaluate(Bundle s) const override;

 private:
  // S n C in local coordinates.
  Bundle ToLocal(Bundle s) const;
  Bundle FromLocal(Bundle local) const;

  std::vector<int> order_;
  Formula formula_;
  CodeSpec code_;
  Rational alpha_;
  Rational beta_;
  Bundle support_;
  SatStatus status_;
  std::optional<Assignment> planted_;
};

// The smallest decoder radius for which Claims 3.5 and 3.6 guarantee that
// every unbalanced set is decoded: the largest integer d < (1 - beta) L / 2.
int RequiredRadius(int codeword_length, const Rational& beta);

struct ExtractedPartition {
  Assignment assignment;
  Bundle a;
  Bundle b;
};

// Some exactly when evaluating S takes the unbalanced branch.
std::optional<ExtractedPartition> ExtractPartition(const EncodedDoublePeak& v,
                                                   Bundle s);

// n = 2^ell bidders with polar additive valuations on m = m0 2^ell items;
// bidder i desires an independent uniform A_i of size m0.
struct BasicInstance {
  int ell = 0;
  int m0 = 0;
  int num_bidders = 0;
  int num_items = 0;
  Rational omega;
  std::vector<Bundle> desired;
  std::vector<ValuationPtr> valuations;

  Instance ToInstance() const { return Instance{num_items, valuations}; }
};

BasicInstance BuildBasicInstance(int ell, int m0, const Rational& omega,
                                 uint64_t seed);
// omega = c / 8.
Rational BasicOmegaForC(const Rational& c);

struct CorrelationRow {
  int bidder = 0;
  // Sample means of |R n A| and |R u A|.
  Rational mean_intersection;
  Rational mean_union;
  // (c / 4 - omega) * mean_union.
  Rational rhs;
  bool holds = false;
};

struct CorrelationReport {
  int trials = 0;
  std::vector<CorrelationRow> rows;
  bool any_holds = false;
};

CorrelationReport CorrelationExperiment(const Mechanism& mechanism,
                                        const BasicInstance& instance,
                                        const Rational& c, int trials,
                                        uint64_t seed);

using TieMechanism = std::variant<MechanismPtr, CppMechanismPtr>;

struct TieConfig {
  int ell = 1;
  int m0 = 2;
  // |C| = 2 m'' 2^j; the code's bits are duplicated 2^j times.
  int j = 0;
  Rational alpha = Rational(1);
  // Zero means 10^-ell.
  Rational beta;
  Rational lambda = Rational(1);
  int trials = 1;
  uint64_t seed = 0;
  // Unset means the repetition code with one copy per bit.
  std::optional<CodeSpec> code;
  // Size for public-project mechanisms; zero means |C| / 2.
  int cpp_k = 0;
  // Zero means c = 1, omega = 1/8 for the other bidders.
  Rational omega;

  void Validate() const;
  Rational EffectiveBeta() const;
  Rational EffectiveOmega() const;
  // The lambda range [1 / (2 ell), 10^ell (m + 2)].
  Rational MinLambda() const;
  Rational MaxLambda() const;
  int NumItems() const { return m0 << ell; }
};

// The code actually used for `formula`, including duplication.
CodeSpec TieCode(const TieConfig& config, const Formula& formula);

struct TieTrial {
  int trial = 0;
  uint64_t seed = 0;
  int bidder = 0;
  std::vector<int> order;
  Bundle returned;
  Rational value;
  bool extracted = false;
  std::string error;
};

struct TieReport {
  bool satisfiable = false;
  std::optional<Assignment> assignment;
  int trials_run = 0;
  std::vector<TieTrial> trials;
};

TieReport RunTieExtraction(const Formula& formula, const TieMechanism& mechanism,
                           const TieConfig& config);

}  // namespace truthbench

#endif  // TRUTHBENCH_REDUCE_TIE_H_
