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

#ifndef TRUTHBENCH_RATIONAL_H_
#define TRUTHBENCH_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace truthbench {

// Exact arbitrary-precision rational. All valuation arithmetic uses it.
using Rational = mpq_class;

// Parses "num/den" or "num" (optionally signed). Throws InputError.
Rational ParseRational(std::string_view text);

// Canonical "num/den" form; integers are written with denominator 1.
std::string FormatRational(const Rational& value);

// 1 / base^exponent.
Rational InversePower(long base, unsigned exponent);

// 2^exponent as an exact rational.
Rational PowerOfTwo(unsigned exponent);

inline Rational PositivePart(const Rational& z) {
  return z > 0 ? z : Rational(0);
}

}  // namespace truthbench

#endif  // TRUTHBENCH_RATIONAL_H_
