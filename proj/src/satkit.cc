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

#include "truthbench/satkit.h"

#include <cstdlib>
#include <sstream>

#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {

Formula::Formula(int num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ < 1) throw InputError("formula needs at least one variable");
  for (size_t c = 0; c < clauses_.size(); ++c) {
    if (clauses_[c].empty()) {
      throw InputError("clause " + std::to_string(c) + " is empty");
    }
    for (int lit : clauses_[c]) {
      if (lit == 0 || std::abs(lit) > num_vars_) {
        throw InputError("literal " + std::to_string(lit) +
                         " outside variable range [1, " +
                         std::to_string(num_vars_) + "]");
      }
    }
  }
}

std::string Formula::ToDimacs() const {
  std::ostringstream out;
  out << "p cnf " << num_vars_ << " " << clauses_.size() << "\n";
  for (const auto& clause : clauses_) {
    for (int lit : clause) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

bool EvalFormula(const Formula& formula, const Assignment& assignment) {
  if (assignment.size() != formula.num_vars()) {
    throw InputError("assignment has " + std::to_string(assignment.size()) +
                     " bits but formula has " +
                     std::to_string(formula.num_vars()) + " variables");
  }
  for (const auto& clause : formula.clauses()) {
    bool satisfied = false;
    for (int lit : clause) {
      const bool value = assignment[std::abs(lit) - 1];
      if ((lit > 0) == value) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

namespace {

void CheckCap(const Formula& formula, int cap) {
  if (formula.num_vars() > cap) {
    throw CapExceeded("SAT enumeration over " +
                          std::to_string(formula.num_vars()) +
                          " variables (cap " + std::to_string(cap) + ")",
                      formula.num_vars(), cap);
  }
}

// Enumerates assignments in lexicographic order; stops once `limit`
// solutions are collected.
std::vector<Assignment> Enumerate(const Formula& formula, size_t limit) {
  std::vector<Assignment> out;
  const int n = formula.num_vars();
  const uint64_t count = uint64_t{1} << n;
  for (uint64_t v = 0; v < count && out.size() < limit; ++v) {
    Assignment a = BitString::FromInteger(v, n);
    if (EvalFormula(formula, a)) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

std::vector<Assignment> BruteForceSat(const Formula& formula, int cap) {
  CheckCap(formula, cap);
  return Enumerate(formula, SIZE_MAX);
}

SatStatus UniqueSatStatus(const Formula& formula, int cap) {
  CheckCap(formula, cap);
  const size_t found = Enumerate(formula, 2).size();
  if (found == 0) return SatStatus::kUnsat;
  return found == 1 ? SatStatus::kUnique : SatStatus::kMultiple;
}

std::string_view SatStatusName(SatStatus status) {
  switch (status) {
    case SatStatus::kUnsat:
      return "UNSAT";
    case SatStatus::kUnique:
      return "UNIQUE";
    case SatStatus::kMultiple:
      return "MULTIPLE";
  }
  return "?";
}

Formula ParseDimacs(std::string_view text) {
  std::vector<std::string> lines;
  for (size_t pos = 0; pos <= text.size();) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }

  int num_vars = -1;
  long declared_clauses = -1;
  std::vector<Formula::Clause> clauses;
  Formula::Clause current;
  int last_literal_line = 0;
  int line_no = 0;
  for (const std::string& line : lines) {
    ++line_no;
    std::istringstream in(line);
    std::string first;
    if (!(in >> first) || first == "c") continue;
    if (first == "%") break;  // SATLIB trailer
    if (first == "p") {
      if (num_vars >= 0) throw ParseError(line_no, "duplicate header");
      std::string kind;
      if (!(in >> kind >> num_vars >> declared_clauses) || kind != "cnf" ||
          num_vars < 1 || declared_clauses < 0) {
        throw ParseError(line_no, "malformed header, expected 'p cnf V C'");
      }
      std::string extra;
      if (in >> extra) throw ParseError(line_no, "trailing tokens in header");
      continue;
    }
    if (num_vars < 0) {
      throw ParseError(line_no, "clause data before 'p cnf' header");
    }
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      char* stop = nullptr;
      const long lit = std::strtol(tok.c_str(), &stop, 10);
      if (stop == tok.c_str() || *stop != '\0') {
        throw ParseError(line_no, "not an integer literal: '" + tok + "'");
      }
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::labs(lit) > num_vars) {
        throw ParseError(line_no, "literal " + tok + " outside [1, " +
                                      std::to_string(num_vars) + "]");
      }
      current.push_back(static_cast<int>(lit));
      last_literal_line = line_no;
    }
  }
  if (num_vars < 0) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) {
    throw ParseError(last_literal_line, "clause not terminated by 0");
  }
  if (static_cast<long>(clauses.size()) != declared_clauses) {
    throw ParseError(line_no, "header declares " +
                                  std::to_string(declared_clauses) +
                                  " clauses but found " +
                                  std::to_string(clauses.size()));
  }
  return Formula(num_vars, std::move(clauses));
}

Formula PlantUniqueSat(const Assignment& planted, uint64_t seed) {
  const int n = planted.size();
  if (n < 1) throw InputError("planted assignment must be non-empty");
  Rng rng(seed);
  std::vector<Formula::Clause> clauses;
  const int width = n < 3 ? n : 3;
  for (int guard = 0; guard < 100000; ++guard) {
    Formula f(n, clauses);
    if (!clauses.empty() && UniqueSatStatus(f) == SatStatus::kUnique) return f;
    // Random clause over distinct variables, re-drawn until `planted`
    // satisfies it.
    Formula::Clause clause;
    do {
      clause.clear();
      for (int v : rng.Sample(n, width)) {
        clause.push_back(rng.Bit() ? v + 1 : -(v + 1));
      }
    } while (!EvalFormula(Formula(n, {clause}), planted));
    clauses.push_back(std::move(clause));
  }
  throw ContractViolation("PlantUniqueSat failed to converge");
}

Formula RandomUnsat(int num_vars, int num_clauses, uint64_t seed) {
  if (num_vars < 1) throw InputError("RandomUnsat needs num_vars >= 1");
  Rng rng(seed);
  std::vector<Formula::Clause> clauses;
  const int width = num_vars < 3 ? num_vars : 3;
  for (int c = 0; c < num_clauses; ++c) {
    Formula::Clause clause;
    for (int v : rng.Sample(num_vars, width)) {
      clause.push_back(rng.Bit() ? v + 1 : -(v + 1));
    }
    clauses.push_back(std::move(clause));
  }
  // Place the contradiction at a seeded position so it is not always last.
  const size_t at = rng.Uniform(clauses.size() + 1);
  clauses.insert(clauses.begin() + at, {1});
  clauses.push_back({-1});
  return Formula(num_vars, std::move(clauses));
}

}  // namespace truthbench
