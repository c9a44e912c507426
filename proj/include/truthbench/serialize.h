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

// Versioned JSON forms of the library's value types. Rationals are always
// "num/den" strings and bundles are sorted item lists.

#ifndef TRUTHBENCH_SERIALIZE_H_
#define TRUTHBENCH_SERIALIZE_H_

#include "json.hpp"
#include "truthbench/bundle.h"
#include "truthbench/codes.h"
#include "truthbench/rational.h"
#include "truthbench/reduce_cpp_mua.h"
#include "truthbench/satkit.h"
#include "truthbench/valuations.h"

namespace truthbench {

using Json = nlohmann::ordered_json;

inline constexpr int kSerializationVersion = 1;

Json ToJson(const Rational& value);
Rational RationalFromJson(const Json& j);

Json ToJson(Bundle s);
Bundle BundleFromJson(const Json& j);

Json ToJson(const BitString& bits);
BitString BitStringFromJson(const Json& j);

Json ToJson(const Formula& formula);
Formula FormulaFromJson(const Json& j);

// Predicates are written as truth tables over [0, m), m <= 20.
Json PredicateToJson(const BundlePredicate& predicate, int num_items);
PredicatePtr PredicateFromJson(const Json& j);

// Every family except bonus valuations whose predicates cannot be
// tabulated. Throws Unsupported for unknown concrete types.
Json ToJson(const Valuation& v);
ValuationPtr ValuationFromJson(const Json& j);

Json ToJson(const MultiUnitValuation& v);
MultiUnitValuation MultiUnitFromJson(const Json& j);

Json ToJson(const CodeSpec& code);
CodeSpec CodeSpecFromJson(const Json& j);

Json ToJson(const RegularCoverInstance& instance);
RegularCoverInstance CoverInstanceFromJson(const Json& j);

// Parses text, turning syntax errors into InputError.
Json ParseJson(std::string_view text);
Json ReadJsonFile(const std::string& path);

// Throws InputError unless every key of `j` is in `allowed`.
void RequireKnownKeys(const Json& j, std::initializer_list<const char*> allowed,
                      std::string_view context);

}  // namespace truthbench

#endif  // TRUTHBENCH_SERIALIZE_H_
