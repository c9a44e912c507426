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

#include "truthbench/bundle.h"

#include <algorithm>

#include "truthbench/errors.h"

namespace truthbench {
namespace {

void CheckItem(int item) {
  if (item < 0 || item >= Bundle::kMaxItems) {
    throw InputError("item index " + std::to_string(item) +
                     " outside [0, 64)");
  }
}

}  // namespace

Bundle::Bundle(std::initializer_list<int> items) {
  for (int item : items) {
    CheckItem(item);
    mask_ |= uint64_t{1} << item;
  }
}

Bundle Bundle::FromItems(std::span<const int> items) {
  Bundle b;
  for (int item : items) b = b.With(item);
  return b;
}

Bundle Bundle::Full(int m) {
  if (m < 0 || m > kMaxItems) {
    throw InputError("ground set size " + std::to_string(m) +
                     " outside [0, 64]");
  }
  return Bundle(m == kMaxItems ? ~uint64_t{0} : (uint64_t{1} << m) - 1);
}

bool Bundle::WithinGround(int m) const {
  if (m >= kMaxItems) return true;
  if (m <= 0) return mask_ == 0;
  return (mask_ >> m) == 0;
}

Bundle Bundle::With(int item) const {
  CheckItem(item);
  return Bundle(mask_ | (uint64_t{1} << item));
}

Bundle Bundle::Without(int item) const {
  CheckItem(item);
  return Bundle(mask_ & ~(uint64_t{1} << item));
}

std::vector<int> Bundle::Items() const {
  std::vector<int> items;
  items.reserve(size());
  for (uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
    items.push_back(std::countr_zero(rest));
  }
  return items;
}

std::string Bundle::ToString() const {
  std::string out = "{";
  bool first = true;
  for (int item : Items()) {
    if (!first) out += ",";
    out += std::to_string(item);
    first = false;
  }
  return out + "}";
}

bool LexLess(Bundle a, Bundle b) {
  const auto ia = a.Items();
  const auto ib = b.Items();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(),
                                      ib.end());
}

std::vector<Bundle> KSubsets(int m, int k) {
  std::vector<Bundle> out;
  if (k < 0 || k > m) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(Bundle::FromItems(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace truthbench
