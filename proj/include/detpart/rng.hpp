// Copyright 2026 The detpart Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>

namespace detpart {

__extension__ using uint128 = unsigned __int128;
__extension__ using int128 = __int128;

/// SplitMix64 finalizer:
///   z = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   return z ^ (z >> 31)
constexpr std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-dependent hash-and-combine:
///   combine(h, v) = mix64(h ^ (mix64(v + 0x9e3779b97f4a7c15) + (h << 6) + (h >> 2)))
constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (mix64(v + 0x9e3779b97f4a7c15ULL) + (h << 6) + (h >> 2)));
}

constexpr std::uint64_t hash_values(std::initializer_list<std::uint64_t> values) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t v : values) h = hash_combine(h, v);
  return h;
}

/// Maps a 64-bit value onto [0, n) by multiply-shift: (x · n) >> 64.
constexpr std::uint64_t reduce_to_range(std::uint64_t x, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<uint128>(x) * n) >> 64);
}

/// xoshiro256** seeded by four SplitMix64 steps from a single 64-bit seed.
///
/// State update (s0..s3):
///   result = rotl(s1 * 5, 7) * 9
///   t = s1 << 17
///   s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
///
/// SplitMix64 seeding: x += 0x9e3779b97f4a7c15, s_i = mix64(x).
/// The recurrence is fixed so sequences are identical on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      word = mix64(x);
    }
  }

  constexpr std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  constexpr std::uint64_t operator()() { return next(); }

  // Uniform in [0, n), n >= 1.
  constexpr std::uint64_t below(std::uint64_t n) { return reduce_to_range(next(), n); }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4]{};
};

}  // namespace detpart
