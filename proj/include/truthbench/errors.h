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

#ifndef TRUTHBENCH_ERRORS_H_
#define TRUTHBENCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace truthbench {

// Bad caller input: wrong lengths, out-of-range items, invalid parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive routine was asked to enumerate beyond its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, long double requested,
              long double cap)
      : std::runtime_error(what + ": requested " + Format(requested) +
                           " exceeds cap " + Format(cap)) {}

 private:
  static std::string Format(long double v) {
    return std::to_string(static_cast<unsigned long long>(v));
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A documented contract of a construction was violated at evaluation time,
// e.g. an encoded valuation whose formula has several satisfying assignments.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace truthbench

#endif  // TRUTHBENCH_ERRORS_H_
