// Copyright 2026 The pacfair Authors.
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

// Portable randomness helpers. std::shuffle and the std distributions are
// implementation-defined, so everything that feeds a golden value goes
// through these instead; std::mt19937_64's raw output is fully specified.

#ifndef PACFAIR_RANDOM_HPP_
#define PACFAIR_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace pacfair {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t MixBits(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent child seed for stream `index` of `seed`. Used for per-draw,
// per-subgroup and per-fold generators so results do not depend on
// evaluation order.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  return MixBits(MixBits(seed) ^ MixBits(index + 0x632be59bd9b4e019ULL));
}

// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

// Fisher-Yates.
template <typename T>
void Shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformIndex(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace pacfair

#endif  // PACFAIR_RANDOM_HPP_
