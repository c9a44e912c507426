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

#include "truthbench/codes.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

BitString B(const char* text) { return BitString::Parse(text); }

Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

CodeSpec Rep3() { return CodeSpec::Repetition(2, 3, Q(1, 3)); }

TEST(RepetitionCodeTest, Examples) {
  CodeSpec code = Rep3();
  EXPECT_EQ(code.codeword_length(), 6);
  EXPECT_EQ(code.radius(), 2);
  EXPECT_EQ(code.Encode(B("00")), B("000000"));
  EXPECT_EQ(code.Encode(B("01")), B("000111"));
  EXPECT_EQ(code.Encode(B("10")), B("111000"));
  EXPECT_THROW(code.Encode(B("1")), InputError);
}

TEST(RepetitionCodeTest, ListDecodeExamples) {
  CodeSpec code = Rep3();
  for (const char* x : {"00", "01", "10", "11"}) {
    std::vector<BitString> list = code.ListDecode(code.Encode(B(x)));
    EXPECT_NE(std::find(list.begin(), list.end(), B(x)), list.end());
  }
  std::vector<BitString> near = code.ListDecode(B("001110"));
  EXPECT_NE(std::find(near.begin(), near.end(), B("01")), near.end());
  EXPECT_EQ(code.ListDecode(B("111111")), std::vector<BitString>{B("11")});
}

// The decoder's contract checked against a direct scan over messages.
void ExpectDecoderMatchesScan(const CodeSpec& code, uint64_t seed) {
  Rng rng(seed);
  const int n = code.codeword_length();
  for (int trial = 0; trial < 30; ++trial) {
    BitString word(n);
    for (int i = 0; i < n; ++i) word.Set(i, rng.Bit());
    std::vector<BitString> expected;
    for (uint64_t v = 0; v < (uint64_t{1} << code.message_length()); ++v) {
      BitString x = BitString::FromInteger(v, code.message_length());
      if (Hamming(code.Encode(x), word) <= code.radius()) expected.push_back(x);
    }
    EXPECT_EQ(code.ListDecode(word), expected);
  }
}

TEST(ListDecodeTest, MatchesScan) {
  ExpectDecoderMatchesScan(Rep3(), 1);
  ExpectDecoderMatchesScan(CodeSpec::Repetition(4, 3, Q(1, 10)), 2);
  ExpectDecoderMatchesScan(CodeSpec::RandomLinear(5, 12, 3, Q(1, 10)), 3);
  ExpectDecoderMatchesScan(CodeSpec::RandomLinear(3, 6, 4, Q(1, 4)), 4);
}

TEST(ListDecodeTest, CapIsEnforced) {
  CodeSpec code = CodeSpec::RandomLinear(8, 16, 1, Q(1, 10));
  EXPECT_THROW(code.ListDecode(BitString(16), 7), CapExceeded);
  EXPECT_THROW(code.ListDecode(BitString(15)), InputError);
}

TEST(RandomLinearCodeTest, InjectiveAndLinear) {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    CodeSpec code = CodeSpec::RandomLinear(6, 10, seed, Q(1, 10));
    std::set<BitString> seen;
    for (uint64_t v = 0; v < 64; ++v) {
      seen.insert(code.Encode(BitString::FromInteger(v, 6)));
    }
    EXPECT_EQ(seen.size(), 64u);
    Rng rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
      BitString x = BitString::FromInteger(rng.Uniform(64), 6);
      BitString y = BitString::FromInteger(rng.Uniform(64), 6);
      EXPECT_EQ(code.Encode(x) ^ code.Encode(y), code.Encode(x ^ y));
    }
  }
}

TEST(RandomLinearCodeTest, DeterministicPerSeed) {
  CodeSpec a = CodeSpec::RandomLinear(4, 9, 77, Q(1, 10));
  CodeSpec b = CodeSpec::RandomLinear(4, 9, 77, Q(1, 10));
  for (uint64_t v = 0; v < 16; ++v) {
    BitString x = BitString::FromInteger(v, 4);
    EXPECT_EQ(a.Encode(x), b.Encode(x));
  }
}

TEST(DuplicationTest, Examples) {
  EXPECT_EQ(DuplicateBits(B("0110"), 1), B("0110"));
  EXPECT_EQ(DuplicateBits(B("01"), 2), B("0011"));
  BitString c = B("1011001");
  EXPECT_EQ(MajorityCollapse(DuplicateBits(c, 4), 4), c);
  EXPECT_EQ(MajorityCollapse(B("0110"), 2), B("00"));
}

TEST(DuplicationTest, DuplicatedCodeEncodesDuplicatedCodewords) {
  CodeSpec base = CodeSpec::RandomLinear(3, 5, 9, Q(1, 10));
  CodeSpec doubled = base.Duplicated(4);
  EXPECT_EQ(doubled.codeword_length(), 20);
  EXPECT_EQ(doubled.base_length(), 5);
  EXPECT_EQ(doubled.radius(), 9);  // floor(0.9 * 20 / 2)
  for (uint64_t v = 0; v < 8; ++v) {
    BitString x = BitString::FromInteger(v, 3);
    EXPECT_EQ(doubled.Encode(x), DuplicateBits(base.Encode(x), 4));
  }
  ExpectDecoderMatchesScan(doubled, 5);
}

TEST(HammingTest, Examples) {
  EXPECT_EQ(Hamming(B("0101"), B("0101")), 0);
  EXPECT_EQ(Hamming(B("000111"), B("001110")), 2);
  EXPECT_EQ(Hamming(B("0011"), B("1010")), Hamming(B("1010"), B("0011")));
  EXPECT_THROW(Hamming(B("01"), B("011")), InputError);
}

TEST(ExpandContractTest, Examples) {
  // Positions: (i, 0) -> i, (i, 1) -> 3 + i.
  EXPECT_EQ(Expand(B("000")), (Bundle{0, 1, 2}));
  EXPECT_EQ(Expand(B("010")), (Bundle{0, 4, 2}));
  EXPECT_EQ(Contract(Bundle(), 4, false), B("0000"));
  EXPECT_EQ(Contract(Bundle(), 4, true), B("1111"));
  // {(0,0), (0,1), (1,1)} with a = 1: position 0 ambiguous, position 1 only
  // (1,1).
  EXPECT_EQ(Contract(Bundle{0, 2, 3}, 2, true), B("11"));
}

TEST(ExpandContractTest, ContractInvertsExpand) {
  for (int length = 1; length <= 8; ++length) {
    for (uint64_t v = 0; v < (uint64_t{1} << length); ++v) {
      BitString y = BitString::FromInteger(v, length);
      Bundle a = Expand(y);
      EXPECT_EQ(a.size(), length);
      EXPECT_EQ(Contract(a, length, false), y);
      EXPECT_EQ(Contract(a, length, true), y);
    }
  }
}

// Indicator-string distance between two subsets of [L] x {0,1}.
int SetDistance(Bundle s, Bundle t) { return (s ^ t).size(); }

// For every y, every S inside the local ground set and every grid beta:
// the unbalance hypothesis implies the two distance conclusions.
TEST(ExpandContractTest, UnbalancedSetsStayCloseToTheirPeak) {
  for (int length = 1; length <= 6; ++length) {
    const uint64_t ground = uint64_t{1} << (2 * length);
    for (const Rational& beta : {Q(1, 20), Q(1, 10), Q(1, 4), Q(1, 2)}) {
      for (uint64_t v = 0; v < (uint64_t{1} << length); ++v) {
        BitString y = BitString::FromInteger(v, length);
        Bundle a = Expand(y);
        Bundle b = Bundle::Full(2 * length) - a;
        for (uint64_t mask = 0; mask < ground; ++mask) {
          Bundle s(mask);
          if ((s & a).size() - (s & b).size() <= beta * length) continue;
          EXPECT_LT(SetDistance(s, a), (1 - beta) * length);
          int best = length;
          for (bool bit : {false, true}) {
            best = std::min(best, Hamming(Contract(s, length, bit),
                                          Contract(a, length, bit)));
          }
          EXPECT_LT(best, (1 - beta) * length / 2)
              << "y=" << y.ToString() << " s=" << s.ToString();
        }
      }
    }
  }
}

}  // namespace
}  // namespace truthbench
