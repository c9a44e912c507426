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

#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "truthbench/errors.h"
#include "truthbench/reduce_tie.h"

namespace truthbench {
namespace {

Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void ExpectSameFunction(const Valuation& a, const Valuation& b) {
  ASSERT_EQ(a.num_items(), b.num_items());
  ASSERT_EQ(a.family(), b.family());
  for (uint64_t mask = 0; mask < (uint64_t{1} << a.num_items()); ++mask) {
    ASSERT_EQ(a.Value(Bundle(mask)), b.Value(Bundle(mask))) << mask;
  }
}

void RoundTrip(const Valuation& v) {
  const Json j = ToJson(v);
  const ValuationPtr back = ValuationFromJson(ParseJson(j.dump()));
  ExpectSameFunction(v, *back);
  EXPECT_EQ(ToJson(*back).dump(), j.dump());
}

TEST(SerializeTest, PolarGolden) {
  const PolarAdditiveValuation v(3, Bundle(0b101), Q(1, 27));
  EXPECT_EQ(ToJson(v).dump(),
            R"({"version":1,"family":"polar_additive","num_items":3,)"
            R"("high_set":[0,2],"omega":"1/27"})");
}

TEST(SerializeTest, RationalsAreStrings) {
  EXPECT_EQ(ToJson(Q(3)).dump(), R"("3/1")");
  EXPECT_EQ(RationalFromJson(Json("-4/6")), Q(-2, 3));
  EXPECT_EQ(RationalFromJson(Json(5)), Q(5));
  EXPECT_THROW(RationalFromJson(Json(0.5)), InputError);
}

TEST(SerializeTest, EveryFamilyRoundTrips) {
  RoundTrip(AdditiveValuation({Q(1, 2), Q(0), Q(3)}));
  RoundTrip(PolarAdditiveValuation(4, Bundle(0b0110), Q(1, 64)));
  RoundTrip(BonusValuation(3, Q(64), 2, UpClosurePredicate({Bundle(0b011)}),
                           std::make_shared<FunctionPredicate>(
                               [](Bundle s) { return s.Contains(1); }, "has1")));
  RoundTrip(DoublePeakValuation(6, Bundle(0b000111), Bundle(0b111000), Q(1),
                                Q(1, 10)));
  RoundTrip(SymmetricDoublePeak(5, Bundle(0b11110), Q(1, 2)));
  RoundTrip(CoverageValuation(4, {{0, 1}, {1, 2}, {3}}, Q(2, 3)));
  auto inner = std::make_shared<SymmetricDoublePeak>(4, Bundle(0b1111), Q(1));
  RoundTrip(ScaledValuation(Q(5, 2), inner));
  const Formula phi(2, {{1}, {-2}});
  RoundTrip(EncodedDoublePeak(8, {7, 1, 2, 3, 4, 5, 6, 0}, phi,
                              CodeSpec::Repetition(2, 2, Q(1, 10)), Q(1),
                              Q(1, 10)));
  RoundTrip(EncodedDoublePeak(
      8, {0, 1, 2, 3, 4, 5, 6, 7}, phi,
      CodeSpec::RandomLinear(2, 2, 4, Q(1, 10)).Duplicated(2), Q(1), Q(1, 4)));
}

TEST(SerializeTest, MultiUnitRoundTrips) {
  const Formula phi(3, {{1}, {-2}});
  for (const MultiUnitValuation& v :
       {MultiUnitValuation::MakeSingleMinded(3, 8),
        MultiUnitValuation::MakeSatBonus(phi),
        MultiUnitValuation::MakeLinear(Q(2), 8)}) {
    const MultiUnitValuation back = MultiUnitFromJson(ToJson(v));
    ASSERT_EQ(back.num_units(), 8);
    for (int s = 0; s <= 8; ++s) EXPECT_EQ(back.Value(s), v.Value(s));
  }
}

TEST(SerializeTest, CodeSpecRoundTrips) {
  for (const CodeSpec& code :
       {CodeSpec::Repetition(3, 2, Q(1, 10)),
        CodeSpec::RandomLinear(3, 7, 99, Q(1, 4)),
        CodeSpec::RandomLinear(2, 3, 5, Q(1, 10)).Duplicated(4)}) {
    const CodeSpec back = CodeSpecFromJson(ToJson(code));
    ASSERT_EQ(back.codeword_length(), code.codeword_length());
    EXPECT_EQ(back.radius(), code.radius());
    for (uint64_t x = 0; x < (uint64_t{1} << code.message_length()); ++x) {
      const BitString msg = BitString::FromInteger(x, code.message_length());
      EXPECT_EQ(back.Encode(msg), code.Encode(msg));
    }
  }
  EXPECT_EQ(ToJson(CodeSpec::Repetition(2, 3, Q(1, 10))).dump(),
            R"({"version":1,"kind":"repetition","message_length":2,)"
            R"("codeword_length":6,"beta":"1/10","repeat":3,"duplication":1})");
}

TEST(SerializeTest, CoverInstanceRoundTrips) {
  const RegularCoverInstance inst = BuildRegularYesInstance(6, 2, 2, 1);
  const RegularCoverInstance back = CoverInstanceFromJson(ToJson(inst));
  EXPECT_EQ(back.sets, inst.sets);
  EXPECT_EQ(back.kind, CoverKind::kYes);
  EXPECT_EQ(back.witness, inst.witness);
  Json broken = ToJson(inst);
  broken["sets"][0].erase(0);
  EXPECT_THROW(CoverInstanceFromJson(broken), InputError);
}

TEST(SerializeTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseJson("{"), InputError);
  Json j = ToJson(AdditiveValuation({Q(1)}));
  j["version"] = 2;
  EXPECT_THROW(ValuationFromJson(j), InputError);
  j["version"] = 1;
  j["family"] = "mystery";
  EXPECT_THROW(ValuationFromJson(j), InputError);
  j["family"] = "additive";
  j["per_item"] = "oops";
  EXPECT_THROW(ValuationFromJson(j), InputError);
  j = ToJson(AdditiveValuation({Q(1)}));
  j["num_items"] = 4;
  EXPECT_THROW(ValuationFromJson(j), InputError);
  EXPECT_THROW(RequireKnownKeys(Json{{"a", 1}, {"b", 2}}, {"a"}, "cfg"),
               InputError);
  EXPECT_NO_THROW(RequireKnownKeys(Json{{"a", 1}}, {"a", "b"}, "cfg"));
}

}  // namespace
}  // namespace truthbench
