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

#include "truthbench/bitstring.h"

#include <numeric>

#include "truthbench/errors.h"

namespace truthbench {

BitString::BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

BitString BitString::Parse(std::string_view text) {
  BitString out(static_cast<int>(text.size()));
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw InputError("bit string may only contain 0 and 1: '" +
                       std::string(text) + "'");
    }
    out.bits_[i] = text[i] == '1';
  }
  return out;
}

BitString BitString::FromInteger(uint64_t value, int width) {
  if (width < 0 || width > 64) throw InputError("bit width outside [0, 64]");
  if (width < 64 && (value >> width) != 0) {
    throw InputError("value " + std::to_string(value) + " needs more than " +
                     std::to_string(width) + " bits");
  }
  BitString out(width);
  for (int i = 0; i < width; ++i) {
    out.bits_[i] = (value >> (width - 1 - i)) & 1u;
  }
  return out;
}

int BitString::Weight() const {
  return std::accumulate(bits_.begin(), bits_.end(), 0);
}

uint64_t BitString::ToInteger() const {
  if (size() > 64) throw InputError("bit string longer than 64 bits");
  uint64_t v = 0;
  for (uint8_t b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::ToString() const {
  std::string s(bits_.size(), '0');
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

BitString operator^(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InputError("xor of unequal-length strings");
  BitString out(a.size());
  for (int i = 0; i < a.size(); ++i) out.bits_[i] = a.bits_[i] ^ b.bits_[i];
  return out;
}

int Hamming(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw InputError("hamming distance of strings with lengths " +
                     std::to_string(x.size()) + " and " +
                     std::to_string(y.size()));
  }
  int d = 0;
  for (int i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

}  // namespace truthbench
