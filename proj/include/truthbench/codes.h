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

#ifndef TRUTHBENCH_CODES_H_
#define TRUTHBENCH_CODES_H_

#include <cstdint>
#include <vector>

#include "truthbench/bitstring.h"
#include "truthbench/bundle.h"
#include "truthbench/rational.h"

namespace truthbench {

using Codeword = BitString;

enum class CodeKind { kRepetition, kRandomLinear };

const char* CodeKindName(CodeKind kind);

// A binary linear code {0,1}^m' -> {0,1}^m'' with an exhaustive list decoder
// of radius d = floor((1 - beta) m'' / 2). Codeword bit i is the GF(2) inner
// product of row i of the generator with the message.
class CodeSpec {
 public:
  static constexpr int kMaxCodewordLength = 64;
  static constexpr int kInjectivityCheckCap = 16;
  static constexpr int kDefaultDecodeCap = 20;

  // Each message bit repeated `repeat` times contiguously.
  static CodeSpec Repetition(int message_length, int repeat, Rational beta);
  // Generator rows drawn from the seeded source, redrawn until the map is
  // injective.
  static CodeSpec RandomLinear(int message_length, int codeword_length,
                               uint64_t seed, Rational beta);

  // The code whose codewords are those of this code with every bit repeated
  // `factor` times. The radius is recomputed from the new length.
  CodeSpec Duplicated(int factor) const;

  CodeKind kind() const { return kind_; }
  int message_length() const { return message_length_; }
  int codeword_length() const { return static_cast<int>(rows_.size()); }
  // Length before duplication.
  int base_length() const { return codeword_length() / duplication_; }
  int duplication() const { return duplication_; }
  int repeat() const { return repeat_; }
  uint64_t seed() const { return seed_; }
  const Rational& beta() const { return beta_; }
  int radius() const { return radius_; }

  Codeword Encode(const BitString& message) const;
  // Exactly the messages within Hamming distance radius() of `word`, in
  // lexicographic order.
  std::vector<BitString> ListDecode(const Codeword& word,
                                    int cap = kDefaultDecodeCap) const;

 private:
  CodeSpec(CodeKind kind, int message_length, std::vector<uint64_t> rows,
           int duplication, int repeat, uint64_t seed, Rational beta);

  // Message bit j of `packed` corresponds to message position j.
  uint64_t EncodePacked(uint64_t packed) const;
  bool IsInjective() const;

  CodeKind kind_;
  int message_length_;
  std::vector<uint64_t> rows_;
  int duplication_;
  int repeat_;
  uint64_t seed_;
  Rational beta_;
  int radius_;
};

// Each bit repeated `factor` times contiguously.
BitString DuplicateBits(const BitString& word, int factor);

// Block-wise majority vote undoing DuplicateBits; a tied block reads as 0.
BitString MajorityCollapse(const BitString& word, int factor);

// Local coordinates for [L] x {0,1}: position i stands for (i, 0) and
// position L + i for (i, 1).
// expand(y) = {(i, y_i) : i in [L]}.
Bundle Expand(const BitString& y);

// con^a: y_i = 0 when only (i, 0) is in s, y_i = 1 when only (i, 1) is in s,
// and y_i = a otherwise. With this reading con^a(expand(y)) = y for both a.
BitString Contract(Bundle s, int length, bool a);

}  // namespace truthbench

#endif  // TRUTHBENCH_CODES_H_
