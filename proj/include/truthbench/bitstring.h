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

#ifndef TRUTHBENCH_BITSTRING_H_
#define TRUTHBENCH_BITSTRING_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace truthbench {

// A fixed-length 0/1 string. Position 0 is the leftmost character of the
// textual form, so "011" has bit(0) = 0.
class BitString {
 public:
  BitString() = default;
  explicit BitString(int length) : bits_(length, 0) {}
  explicit BitString(std::vector<uint8_t> bits);

  // Parses a string of '0'/'1'. Throws InputError on other characters.
  static BitString Parse(std::string_view text);
  // The `width`-bit binary expansion of `value`, most significant bit first.
  static BitString FromInteger(uint64_t value, int width);

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int i) const { return bits_[i] != 0; }
  void Set(int i, bool value) { bits_[i] = value ? 1 : 0; }
  int Weight() const;

  // Inverse of FromInteger (most significant bit first).
  uint64_t ToInteger() const;
  std::string ToString() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;
  friend BitString operator^(const BitString& a, const BitString& b);

 private:
  std::vector<uint8_t> bits_;
};

// Number of positions at which the strings differ. Throws InputError on a
// length mismatch.
int Hamming(const BitString& x, const BitString& y);

}  // namespace truthbench

#endif  // TRUTHBENCH_BITSTRING_H_
