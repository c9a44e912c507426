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

#ifndef TRUTHBENCH_BUNDLE_H_
#define TRUTHBENCH_BUNDLE_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace truthbench {

// A subset of the item ground set [0, m), m <= 64, stored as a bit mask.
// Bundles do not carry m; operations that need the ground set take it.
class Bundle {
 public:
  static constexpr int kMaxItems = 64;

  constexpr Bundle() = default;
  constexpr explicit Bundle(uint64_t mask) : mask_(mask) {}
  Bundle(std::initializer_list<int> items);

  static Bundle FromItems(std::span<const int> items);
  // The full ground set [0, m).
  static Bundle Full(int m);

  constexpr uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  bool Contains(int item) const {
    return item >= 0 && item < kMaxItems && ((mask_ >> item) & 1u) != 0;
  }
  constexpr bool IsSubsetOf(Bundle other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool IsStrictSubsetOf(Bundle other) const {
    return IsSubsetOf(other) && mask_ != other.mask_;
  }
  // True iff every member lies in [0, m).
  bool WithinGround(int m) const;

  Bundle With(int item) const;
  Bundle Without(int item) const;

  std::vector<int> Items() const;
  // "{0,2,5}".
  std::string ToString() const;

  friend constexpr Bundle operator|(Bundle a, Bundle b) {
    return Bundle(a.mask_ | b.mask_);
  }
  friend constexpr Bundle operator&(Bundle a, Bundle b) {
    return Bundle(a.mask_ & b.mask_);
  }
  friend constexpr Bundle operator^(Bundle a, Bundle b) {
    return Bundle(a.mask_ ^ b.mask_);
  }
  // Set difference.
  friend constexpr Bundle operator-(Bundle a, Bundle b) {
    return Bundle(a.mask_ & ~b.mask_);
  }
  friend constexpr bool operator==(Bundle a, Bundle b) = default;

 private:
  uint64_t mask_ = 0;
};

// Lexicographic order on the sorted member lists, so {0,1} < {0,2} < {1}.
bool LexLess(Bundle a, Bundle b);

// All size-k subsets of [0, m) in lexicographic order of sorted members.
std::vector<Bundle> KSubsets(int m, int k);

// Complement within [0, m).
inline Bundle Complement(Bundle s, int m) { return Bundle::Full(m) - s; }

}  // namespace truthbench

#endif  // TRUTHBENCH_BUNDLE_H_
