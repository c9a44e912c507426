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

#include "truthbench/serialize.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>

#include "truthbench/errors.h"
#include "truthbench/reduce_tie.h"

namespace truthbench {
namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

void CheckVersion(const Json& j) {
  const int version = Field(j, "version").get<int>();
  if (version != kSerializationVersion) {
    throw InputError("unsupported serialization version " +
                     std::to_string(version));
  }
}

// Runs `fn`, turning nlohmann type errors into InputError.
template <typename Fn>
auto Guard(std::string_view what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

Json RationalList(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(ToJson(v));
  return out;
}

std::vector<Rational> RationalListFromJson(const Json& j) {
  std::vector<Rational> out;
  for (const Json& v : j) out.push_back(RationalFromJson(v));
  return out;
}

Json Header(const Valuation& v) {
  Json j;
  j["version"] = kSerializationVersion;
  j["family"] = std::string(v.family());
  j["num_items"] = v.num_items();
  return j;
}

}  // namespace

Json ToJson(const Rational& value) { return FormatRational(value); }

Rational RationalFromJson(const Json& j) {
  if (j.is_string()) return ParseRational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rationals are \"num/den\" strings");
}

Json ToJson(Bundle s) {
  Json out = Json::array();
  for (int item : s.Items()) out.push_back(item);
  return out;
}

Bundle BundleFromJson(const Json& j) {
  return Guard("bundle", [&] {
    Bundle out;
    for (const Json& item : j) {
      const int i = item.get<int>();
      if (i < 0 || i >= Bundle::kMaxItems) {
        throw InputError("bundle item out of range");
      }
      out = out.With(i);
    }
    return out;
  });
}

Json ToJson(const BitString& bits) { return bits.ToString(); }

BitString BitStringFromJson(const Json& j) {
  return Guard("bit string",
               [&] { return BitString::Parse(j.get<std::string>()); });
}

Json ToJson(const Formula& formula) {
  Json j;
  j["num_vars"] = formula.num_vars();
  j["clauses"] = formula.clauses();
  return j;
}

Formula FormulaFromJson(const Json& j) {
  return Guard("formula", [&] {
    return Formula(Field(j, "num_vars").get<int>(),
                   Field(j, "clauses").get<std::vector<Formula::Clause>>());
  });
}

Json PredicateToJson(const BundlePredicate& predicate, int num_items) {
  if (num_items > 20) {
    throw Unsupported("predicates are tabulated only for m <= 20");
  }
  std::string table;
  for (uint64_t mask = 0; mask < (uint64_t{1} << num_items); ++mask) {
    table.push_back(predicate(Bundle(mask)) ? '1' : '0');
  }
  Json j;
  j["kind"] = "table";
  j["num_items"] = num_items;
  j["table"] = table;
  return j;
}

PredicatePtr PredicateFromJson(const Json& j) {
  return Guard("predicate", [&]() -> PredicatePtr {
    if (Field(j, "kind").get<std::string>() != "table") {
      throw InputError("predicates must be of kind \"table\"");
    }
    const std::string bits = Field(j, "table").get<std::string>();
    std::vector<bool> table;
    for (char c : bits) {
      if (c != '0' && c != '1') throw InputError("table must be 0/1");
      table.push_back(c == '1');
    }
    return std::make_shared<TruthTablePredicate>(
        Field(j, "num_items").get<int>(), std::move(table));
  });
}

Json ToJson(const Valuation& v) {
  Json j = Header(v);
  if (const auto* a = dynamic_cast<const AdditiveValuation*>(&v)) {
    j["per_item"] = RationalList(a->per_item());
  } else if (const auto* p = dynamic_cast<const PolarAdditiveValuation*>(&v)) {
    j["high_set"] = ToJson(p->high_set());
    j["omega"] = ToJson(p->omega());
  } else if (const auto* b = dynamic_cast<const BonusValuation*>(&v)) {
    j["t"] = ToJson(b->t());
    j["k"] = b->k();
    j["menu_predicate"] = PredicateToJson(b->menu_predicate(), v.num_items());
    j["bonus_predicate"] = PredicateToJson(b->bonus_predicate(), v.num_items());
  } else if (const auto* d = dynamic_cast<const DoublePeakValuation*>(&v)) {
    j["a"] = ToJson(d->a());
    j["b"] = ToJson(d->b());
    j["alpha"] = ToJson(d->alpha());
    j["beta"] = ToJson(d->beta());
  } else if (const auto* s = dynamic_cast<const SymmetricDoublePeak*>(&v)) {
    j["support"] = ToJson(s->support());
    j["alpha"] = ToJson(s->alpha());
  } else if (const auto* e = dynamic_cast<const EncodedDoublePeak*>(&v)) {
    j["order"] = e->order();
    j["formula"] = ToJson(e->formula());
    j["code"] = ToJson(e->code());
    j["alpha"] = ToJson(e->alpha());
    j["beta"] = ToJson(e->beta());
  } else if (const auto* c = dynamic_cast<const CoverageValuation*>(&v)) {
    j["universe_size"] = c->universe_size();
    j["item_sets"] = c->item_sets();
    j["scale"] = ToJson(c->scale());
  } else if (const auto* l = dynamic_cast<const ScaledValuation*>(&v)) {
    j["lambda"] = ToJson(l->lambda());
    j["inner"] = ToJson(*l->inner());
  } else {
    throw Unsupported("no serialization for family " + std::string(v.family()));
  }
  return j;
}

ValuationPtr ValuationFromJson(const Json& j) {
  return Guard("valuation", [&]() -> ValuationPtr {
    CheckVersion(j);
    const std::string family = Field(j, "family").get<std::string>();
    const int m = Field(j, "num_items").get<int>();
    ValuationPtr out;
    if (family == "additive") {
      out = std::make_shared<AdditiveValuation>(
          RationalListFromJson(Field(j, "per_item")));
    } else if (family == "polar_additive") {
      out = std::make_shared<PolarAdditiveValuation>(
          m, BundleFromJson(Field(j, "high_set")),
          RationalFromJson(Field(j, "omega")));
    } else if (family == "bonus") {
      out = std::make_shared<BonusValuation>(
          m, RationalFromJson(Field(j, "t")), Field(j, "k").get<int>(),
          PredicateFromJson(Field(j, "menu_predicate")),
          PredicateFromJson(Field(j, "bonus_predicate")));
    } else if (family == "double_peak") {
      out = std::make_shared<DoublePeakValuation>(
          m, BundleFromJson(Field(j, "a")), BundleFromJson(Field(j, "b")),
          RationalFromJson(Field(j, "alpha")),
          RationalFromJson(Field(j, "beta")));
    } else if (family == "symmetric_double_peak") {
      out = std::make_shared<SymmetricDoublePeak>(
          m, BundleFromJson(Field(j, "support")),
          RationalFromJson(Field(j, "alpha")));
    } else if (family == "encoded_double_peak") {
      out = std::make_shared<EncodedDoublePeak>(
          m, Field(j, "order").get<std::vector<int>>(),
          FormulaFromJson(Field(j, "formula")),
          CodeSpecFromJson(Field(j, "code")),
          RationalFromJson(Field(j, "alpha")),
          RationalFromJson(Field(j, "beta")));
    } else if (family == "coverage") {
      out = std::make_shared<CoverageValuation>(
          Field(j, "universe_size").get<int>(),
          Field(j, "item_sets").get<std::vector<std::vector<int>>>(),
          RationalFromJson(Field(j, "scale")));
    } else if (family == "scaled") {
      out = std::make_shared<ScaledValuation>(
          RationalFromJson(Field(j, "lambda")),
          ValuationFromJson(Field(j, "inner")));
    } else {
      throw InputError("unknown valuation family \"" + family + "\"");
    }
    if (out->num_items() != m) {
      throw InputError("num_items disagrees with the valuation's fields");
    }
    return out;
  });
}

Json ToJson(const MultiUnitValuation& v) {
  Json j;
  j["version"] = kSerializationVersion;
  j["family"] = "multi_unit";
  j["num_units"] = v.num_units();
  std::visit(
      [&](const auto& kind) {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, MultiUnitValuation::SingleMinded>) {
          j["kind"] = "single_minded";
          j["threshold"] = kind.threshold;
        } else if constexpr (std::is_same_v<T, MultiUnitValuation::SatBonus>) {
          j["kind"] = "sat_bonus";
          j["formula"] = ToJson(kind.formula);
        } else {
          j["kind"] = "linear";
          j["slope"] = ToJson(kind.slope);
        }
      },
      v.kind());
  return j;
}

MultiUnitValuation MultiUnitFromJson(const Json& j) {
  return Guard("multi-unit valuation", [&] {
    CheckVersion(j);
    const std::string kind = Field(j, "kind").get<std::string>();
    const int m = Field(j, "num_units").get<int>();
    if (kind == "single_minded") {
      return MultiUnitValuation::MakeSingleMinded(
          Field(j, "threshold").get<int>(), m);
    }
    if (kind == "linear") {
      return MultiUnitValuation::MakeLinear(
          RationalFromJson(Field(j, "slope")), m);
    }
    if (kind == "sat_bonus") {
      MultiUnitValuation v =
          MultiUnitValuation::MakeSatBonus(FormulaFromJson(Field(j, "formula")));
      if (v.num_units() != m) throw InputError("num_units must be 2^num_vars");
      return v;
    }
    throw InputError("unknown multi-unit kind \"" + kind + "\"");
  });
}

Json ToJson(const CodeSpec& code) {
  Json j;
  j["version"] = kSerializationVersion;
  j["kind"] = CodeKindName(code.kind());
  j["message_length"] = code.message_length();
  j["codeword_length"] = code.base_length();
  j["beta"] = ToJson(code.beta());
  if (code.kind() == CodeKind::kRepetition) {
    j["repeat"] = code.repeat();
  } else {
    j["seed"] = code.seed();
  }
  j["duplication"] = code.duplication();
  return j;
}

CodeSpec CodeSpecFromJson(const Json& j) {
  return Guard("code", [&] {
    CheckVersion(j);
    const std::string kind = Field(j, "kind").get<std::string>();
    const int message_length = Field(j, "message_length").get<int>();
    const Rational beta = RationalFromJson(Field(j, "beta"));
    const int duplication = j.value("duplication", 1);
    std::optional<CodeSpec> base;
    if (kind == "repetition") {
      base = CodeSpec::Repetition(message_length, Field(j, "repeat").get<int>(),
                                  beta);
      if (j.contains("codeword_length") &&
          j["codeword_length"].get<int>() != base->codeword_length()) {
        throw InputError("codeword_length must equal m' * repeat");
      }
    } else if (kind == "random_linear") {
      base = CodeSpec::RandomLinear(message_length,
                                    Field(j, "codeword_length").get<int>(),
                                    Field(j, "seed").get<uint64_t>(), beta);
    } else {
      throw InputError("unknown code kind \"" + kind + "\"");
    }
    return duplication > 1 ? base->Duplicated(duplication) : *base;
  });
}

Json ToJson(const RegularCoverInstance& instance) {
  Json j;
  j["version"] = kSerializationVersion;
  j["universe_size"] = instance.universe_size;
  j["k"] = instance.k;
  j["d"] = instance.d;
  j["sets"] = instance.sets;
  j["kind"] = CoverKindName(instance.kind);
  if (instance.kind == CoverKind::kYes) j["witness"] = instance.witness;
  if (instance.certified_max) j["certified_max"] = *instance.certified_max;
  return j;
}

RegularCoverInstance CoverInstanceFromJson(const Json& j) {
  return Guard("cover instance", [&] {
    CheckVersion(j);
    RegularCoverInstance instance;
    instance.universe_size = Field(j, "universe_size").get<int>();
    instance.k = Field(j, "k").get<int>();
    instance.d = Field(j, "d").get<int>();
    instance.sets = Field(j, "sets").get<std::vector<std::vector<int>>>();
    const std::string kind = j.value("kind", std::string("uncertified"));
    if (kind == "yes") {
      instance.kind = CoverKind::kYes;
      instance.witness = Field(j, "witness").get<std::vector<int>>();
    } else if (kind == "no") {
      instance.kind = CoverKind::kNo;
      instance.certified_max = Field(j, "certified_max").get<int>();
    } else if (kind != "uncertified") {
      throw InputError("unknown instance kind \"" + kind + "\"");
    }
    try {
      instance.Validate();
    } catch (const ContractViolation& e) {
      throw InputError(e.what());
    }
    return instance;
  });
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseJson(buffer.str());
}

void RequireKnownKeys(const Json& j, std::initializer_list<const char*> allowed,
                      std::string_view context) {
  if (!j.is_object()) {
    throw InputError(std::string(context) + " must be a JSON object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) {
      throw InputError(std::string(context) + ": unknown key \"" + item.key() +
                       "\"");
    }
  }
}

}  // namespace truthbench
