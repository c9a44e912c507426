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

#include <bit>
#include <string>
#include <unordered_set>
#include <utility>

#include "truthbench/errors.h"
#include "truthbench/rng.h"

namespace truthbench {
namespace {

int Radius(const Rational& beta, int length) {
  Rational r = (1 - beta) * length / 2;
  mpz_class floor = r.get_num() / r.get_den();
  return static_cast<int>(floor.get_si());
}

void CheckBeta(const Rational& beta) {
  if (beta <= 0 || beta >= 1) throw InputError("beta must lie in (0, 1)");
}

uint64_t Pack(const BitString& message) {
  uint64_t packed = 0;
  for (int j = 0; j < message.size(); ++j) {
    if (message[j]) packed |= uint64_t{1} << j;
  }
  return packed;
}

BitString Unpack(uint64_t packed, int length) {
  BitString out(length);
  for (int j = 0; j < length; ++j) out.Set(j, (packed >> j) & 1);
  return out;
}

// GF(2) rank of the columns spanned by `rows` over `width` message bits.
int Rank(std::vector<uint64_t> rows, int width) {
  int rank = 0;
  for (int col = 0; col < width && rank < static_cast<int>(rows.size());
       ++col) {
    const uint64_t bit = uint64_t{1} << col;
    size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

const char* CodeKindName(CodeKind kind) {
  return kind == CodeKind::kRepetition ? "repetition" : "random_linear";
}

CodeSpec::CodeSpec(CodeKind kind, int message_length,
                   std::vector<uint64_t> rows, int duplication, int repeat,
                   uint64_t seed, Rational beta)
    : kind_(kind),
      message_length_(message_length),
      rows_(std::move(rows)),
      duplication_(duplication),
      repeat_(repeat),
      seed_(seed),
      beta_(std::move(beta)),
      radius_(Radius(beta_, static_cast<int>(rows_.size()))) {
  if (message_length_ <= kInjectivityCheckCap && !IsInjective()) {
    throw InputError("code is not injective");
  }
}

CodeSpec CodeSpec::Repetition(int message_length, int repeat, Rational beta) {
  CheckBeta(beta);
  if (message_length < 1 || repeat < 1) {
    throw InputError("repetition code needs m' >= 1 and repeat >= 1");
  }
  if (message_length * repeat > kMaxCodewordLength) {
    throw CapExceeded("codeword length", message_length * repeat,
                      kMaxCodewordLength);
  }
  std::vector<uint64_t> rows;
  for (int j = 0; j < message_length; ++j) {
    for (int r = 0; r < repeat; ++r) rows.push_back(uint64_t{1} << j);
  }
  return CodeSpec(CodeKind::kRepetition, message_length, std::move(rows), 1,
                  repeat, 0, std::move(beta));
}

CodeSpec CodeSpec::RandomLinear(int message_length, int codeword_length,
                                uint64_t seed, Rational beta) {
  CheckBeta(beta);
  if (message_length < 1 || codeword_length < message_length) {
    throw InputError("random linear code needs 1 <= m' <= m''");
  }
  if (codeword_length > kMaxCodewordLength) {
    throw CapExceeded("codeword length", codeword_length, kMaxCodewordLength);
  }
  const uint64_t mask = message_length == 64
                            ? ~uint64_t{0}
                            : (uint64_t{1} << message_length) - 1;
  for (uint64_t attempt = 0;; ++attempt) {
    Rng rng(DeriveSeed(seed, attempt));
    std::vector<uint64_t> rows(codeword_length);
    for (uint64_t& row : rows) row = rng.Next() & mask;
    if (Rank(rows, message_length) == message_length) {
      return CodeSpec(CodeKind::kRandomLinear, message_length,
                      std::move(rows), 1, 0, seed, std::move(beta));
    }
  }
}

CodeSpec CodeSpec::Duplicated(int factor) const {
  if (factor < 1) throw InputError("duplication factor must be >= 1");
  if (codeword_length() * factor > kMaxCodewordLength) {
    throw CapExceeded("duplicated codeword length", codeword_length() * factor,
                      kMaxCodewordLength);
  }
  std::vector<uint64_t> rows;
  for (uint64_t row : rows_) {
    for (int f = 0; f < factor; ++f) rows.push_back(row);
  }
  return CodeSpec(kind_, message_length_, std::move(rows),
                  duplication_ * factor, repeat_, seed_, beta_);
}

uint64_t CodeSpec::EncodePacked(uint64_t packed) const {
  uint64_t word = 0;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (std::popcount(rows_[i] & packed) & 1) word |= uint64_t{1} << i;
  }
  return word;
}

bool CodeSpec::IsInjective() const {
  const uint64_t count = uint64_t{1} << message_length_;
  std::unordered_set<uint64_t> seen;
  seen.reserve(count);
  for (uint64_t packed = 0; packed < count; ++packed) {
    if (!seen.insert(EncodePacked(packed)).second) return false;
  }
  return true;
}

Codeword CodeSpec::Encode(const BitString& message) const {
  if (message.size() != message_length_) {
    throw InputError("message length " + std::to_string(message.size()) +
                     " != " + std::to_string(message_length_));
  }
  return Unpack(EncodePacked(Pack(message)), codeword_length());
}

std::vector<BitString> CodeSpec::ListDecode(const Codeword& word,
                                            int cap) const {
  if (word.size() != codeword_length()) {
    throw InputError("codeword length " + std::to_string(word.size()) +
                     " != " + std::to_string(codeword_length()));
  }
  if (message_length_ > cap) {
    throw CapExceeded("list decoding message length", message_length_, cap);
  }
  const uint64_t target = Pack(word);
  std::vector<BitString> out;
  // Lexicographic order with x1 most significant.
  const uint64_t count = uint64_t{1} << message_length_;
  for (uint64_t value = 0; value < count; ++value) {
    BitString message = BitString::FromInteger(value, message_length_);
    const uint64_t diff = EncodePacked(Pack(message)) ^ target;
    if (std::popcount(diff) <= radius_) out.push_back(std::move(message));
  }
  return out;
}

BitString DuplicateBits(const BitString& word, int factor) {
  if (factor < 1) throw InputError("duplication factor must be >= 1");
  BitString out(word.size() * factor);
  for (int i = 0; i < word.size(); ++i) {
    for (int f = 0; f < factor; ++f) out.Set(i * factor + f, word[i]);
  }
  return out;
}

BitString MajorityCollapse(const BitString& word, int factor) {
  if (factor < 1 || word.size() % factor != 0) {
    throw InputError("word length must be a multiple of the factor");
  }
  BitString out(word.size() / factor);
  for (int i = 0; i < out.size(); ++i) {
    int ones = 0;
    for (int f = 0; f < factor; ++f) ones += word[i * factor + f];
    out.Set(i, 2 * ones > factor);
  }
  return out;
}

Bundle Expand(const BitString& y) {
  const int length = y.size();
  if (2 * length > Bundle::kMaxItems) {
    throw CapExceeded("expanded length", 2 * length, Bundle::kMaxItems);
  }
  Bundle out;
  for (int i = 0; i < length; ++i) out = out.With(y[i] ? length + i : i);
  return out;
}

BitString Contract(Bundle s, int length, bool a) {
  if (!s.WithinGround(2 * length)) {
    throw InputError("bundle outside [" + std::to_string(length) +
                     "] x {0,1}");
  }
  BitString out(length);
  for (int i = 0; i < length; ++i) {
    const bool zero = s.Contains(i);
    const bool one = s.Contains(length + i);
    out.Set(i, zero == one ? a : one);
  }
  return out;
}

}  // namespace truthbench
