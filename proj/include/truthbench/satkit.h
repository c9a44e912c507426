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

#ifndef TRUTHBENCH_SATKIT_H_
#define TRUTHBENCH_SATKIT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "truthbench/bitstring.h"

namespace truthbench {

// Bit i of an assignment is the value of variable i + 1.
using Assignment = BitString;

// A CNF formula over variables 1..num_vars. Literals are signed variable
// indices: +v for x_v, -v for its negation.
class Formula {
 public:
  using Clause = std::vector<int>;

  // Validates every literal and rejects empty clauses (InputError).
  Formula(int num_vars, std::vector<Clause> clauses);

  int num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  // DIMACS text for this formula.
  std::string ToDimacs() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  int num_vars_;
  std::vector<Clause> clauses_;
};

// True iff every clause has a satisfied literal. Throws InputError when the
// assignment length differs from the formula's variable count.
bool EvalFormula(const Formula& formula, const Assignment& assignment);

inline constexpr int kDefaultSatEnumerationCap = 24;

// Every satisfying assignment, in lexicographic order (x1 most significant).
// Throws CapExceeded when num_vars > cap.
std::vector<Assignment> BruteForceSat(const Formula& formula,
                                      int cap = kDefaultSatEnumerationCap);

enum class SatStatus { kUnsat, kUnique, kMultiple };

SatStatus UniqueSatStatus(const Formula& formula,
                          int cap = kDefaultSatEnumerationCap);

std::string_view SatStatusName(SatStatus status);

// DIMACS CNF. Comment lines ("c ...") are skipped, the "p cnf V C" header is
// mandatory, clauses may span lines and each ends with 0. Throws ParseError
// carrying the offending line number.
Formula ParseDimacs(std::string_view text);

// Random formula whose only satisfying assignment is `planted`: random
// 3-literal clauses satisfied by `planted` are added until brute force
// reports a unique solution. Intended for num_vars <= 16.
Formula PlantUniqueSat(const Assignment& planted, uint64_t seed);

// Random unsatisfiable formula: random clauses plus the pair (x1), (-x1).
Formula RandomUnsat(int num_vars, int num_clauses, uint64_t seed);

}  // namespace truthbench

#endif  // TRUTHBENCH_SATKIT_H_
