// Copyright 2026 The gibbstree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seedable 64-bit generator with explicit stream splitting.
//
// Streams are addressed by (seed, worker, draw): Rng::ForDraw hashes the
// triple into an independent SplitMix64 state, so any sample can be
// regenerated in isolation and results do not depend on how draws are
// distributed across workers. Rng::Stream(seed, worker) is a long-lived
// stream for callers that do not need per-draw addressing.
//
// All derived quantities (uniform doubles, bounded integers, shuffles) are
// computed here rather than through <random> distributions so that output is
// identical across standard library implementations.

#ifndef GIBBSTREE_RNG_HPP_
#define GIBBSTREE_RNG_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace gibbstree {

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t state = 0) : state_(state) {}

  static Rng Stream(std::uint64_t seed, std::uint64_t worker) {
    return Rng(Mix(seed ^ Mix(worker + 0x632be59bd9b4e019ULL)));
  }

  static Rng ForDraw(std::uint64_t seed, std::uint64_t worker,
                     std::uint64_t draw) {
    return Rng(Mix(Mix(seed ^ Mix(worker + 0x632be59bd9b4e019ULL)) ^
                   Mix(draw + 0x9e3779b97f4a7c15ULL)));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}; rejection keeps it unbiased.
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % n;
  }

  template <typename T>
  void Shuffle(std::span<T> xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::swap(xs[i - 1], xs[Below(i)]);
    }
  }

 private:
  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace gibbstree

#endif  // GIBBSTREE_RNG_HPP_
