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

#ifndef TRUTHBENCH_RNG_H_
#define TRUTHBENCH_RNG_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace truthbench {

// Mixes a base seed with a stream index (splitmix64 finalizer). Used to give
// every trial its own recorded seed.
uint64_t DeriveSeed(uint64_t base, uint64_t stream);

// Seeded source. Only the raw mt19937_64 output stream is used, whose
// sequence is fixed by the standard, so draws are identical on every
// platform. The distribution helpers below avoid <random>'s
// implementation-defined distributions for the same reason.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform on [0, n). n must be positive.
  uint64_t Uniform(uint64_t n);
  bool Bit() { return (engine_() >> 63) != 0; }

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      size_t j = Uniform(i);
      std::swap(values[i - 1], values[j]);
    }
  }

  // A uniformly random size-k subset of [0, n), as a sorted index list.
  std::vector<int> Sample(int n, int k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace truthbench

#endif  // TRUTHBENCH_RNG_H_
