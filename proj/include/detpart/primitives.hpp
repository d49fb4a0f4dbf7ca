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

// Deterministic parallel building blocks. Every function here is a pure
// function of its arguments: the output does not depend on the number of
// OpenMP threads or on how work is scheduled.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "detpart/parallel.hpp"
#include "detpart/rng.hpp"

namespace detpart {

template <typename T>
struct CountingSortResult {
  std::vector<T> sorted;
  // offsets[key] is the first position of key; offsets[max_key] == size.
  std::vector<std::size_t> offsets;
};

/// Stable counting sort of `items` by `key(item)`, which must lie in [0, max_key).
///
/// The input is cut into a fixed number of contiguous blocks; each block is
/// histogrammed and scattered independently. Since a stable sort has exactly
/// one result, the block count only affects speed.
template <typename T, typename KeyFn>
CountingSortResult<T> counting_sort(std::span<const T> items, KeyFn&& key, std::size_t max_key) {
  const std::size_t n = items.size();
  CountingSortResult<T> result;
  result.sorted.resize(n);
  result.offsets.assign(max_key + 1, 0);

  if (!parallel::worth_parallel(n)) {
    for (const T& item : items) ++result.offsets[static_cast<std::size_t>(key(item)) + 1];
    for (std::size_t k = 0; k < max_key; ++k) result.offsets[k + 1] += result.offsets[k];
    std::vector<std::size_t> cursor(result.offsets.begin(), result.offsets.end() - 1);
    for (const T& item : items) result.sorted[cursor[static_cast<std::size_t>(key(item))]++] = item;
    return result;
  }

  const std::size_t blocks = static_cast<std::size_t>(parallel::max_threads());
  const std::size_t block_size = (n + blocks - 1) / blocks;
  // hist[b * max_key + key]
  std::vector<std::size_t> hist(blocks * max_key, 0);

#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = std::min(n, b * block_size);
    const std::size_t end = std::min(n, begin + block_size);
    std::size_t* h = hist.data() + b * max_key;
    for (std::size_t i = begin; i < end; ++i) ++h[static_cast<std::size_t>(key(items[i]))];
  }

  for (std::size_t k = 0; k < max_key; ++k) {
    std::size_t total = 0;
    for (std::size_t b = 0; b < blocks; ++b) total += hist[b * max_key + k];
    result.offsets[k + 1] = result.offsets[k] + total;
  }

#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < max_key; ++k) {
    std::size_t pos = result.offsets[k];
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t count = hist[b * max_key + k];
      hist[b * max_key + k] = pos;
      pos += count;
    }
  }

#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = std::min(n, b * block_size);
    const std::size_t end = std::min(n, begin + block_size);
    std::size_t* cursor = hist.data() + b * max_key;
    for (std::size_t i = begin; i < end; ++i) {
      result.sorted[cursor[static_cast<std::size_t>(key(items[i]))]++] = items[i];
    }
  }
  return result;
}

template <typename T>
T checked_add(T a, T b) {
  T out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("prefix sum overflow");
  return out;
}

/// Exclusive prefix sums. Throws std::overflow_error if any partial sum,
/// including the grand total, overflows T.
template <typename T>
std::vector<T> prefix_sum(std::span<const T> values) {
  static_assert(std::is_integral_v<T>);
  const std::size_t n = values.size();
  std::vector<T> out(n);
  if (!parallel::worth_parallel(n)) {
    T running{0};
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = running;
      running = checked_add(running, values[i]);
    }
    return out;
  }

  const std::size_t blocks = static_cast<std::size_t>(parallel::max_threads());
  const std::size_t block_size = (n + blocks - 1) / blocks;
  std::vector<T> block_total(blocks, T{0});
  std::vector<char> overflow(blocks, 0);

#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = std::min(n, b * block_size);
    const std::size_t end = std::min(n, begin + block_size);
    T running{0};
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = running;
      if (__builtin_add_overflow(running, values[i], &running)) {
        overflow[b] = 1;
        break;
      }
    }
    block_total[b] = running;
  }
  if (std::find(overflow.begin(), overflow.end(), 1) != overflow.end()) {
    throw std::overflow_error("prefix sum overflow");
  }

  std::vector<T> block_offset(blocks, T{0});
  for (std::size_t b = 1; b < blocks; ++b) block_offset[b] = checked_add(block_offset[b - 1], block_total[b - 1]);
  checked_add(block_offset[blocks - 1], block_total[blocks - 1]);

#pragma omp parallel for schedule(static)
  for (std::size_t b = 1; b < blocks; ++b) {
    const std::size_t begin = std::min(n, b * block_size);
    const std::size_t end = std::min(n, begin + block_size);
    for (std::size_t i = begin; i < end; ++i) {
      if (__builtin_add_overflow(out[i], block_offset[b], &out[i])) overflow[b] = 1;
    }
  }
  if (std::find(overflow.begin(), overflow.end(), 1) != overflow.end()) {
    throw std::overflow_error("prefix sum overflow");
  }
  return out;
}

template <typename T>
std::vector<T> prefix_sum(const std::vector<T>& values) {
  return prefix_sum(std::span<const T>(values));
}

struct SubRoundPartition {
  std::vector<std::uint32_t> permuted_items;
  // round_offsets[r] .. round_offsets[r + 1] delimits sub-round r.
  std::vector<std::size_t> round_offsets;

  std::size_t num_sub_rounds() const { return round_offsets.size() - 1; }
  std::span<const std::uint32_t> sub_round(std::size_t r) const {
    return std::span<const std::uint32_t>(permuted_items).subspan(round_offsets[r],
                                                                  round_offsets[r + 1] - round_offsets[r]);
  }
};

inline constexpr std::size_t kNumTags = 256;
inline constexpr std::size_t kDefaultChunkCount = 256;

/// Draws one 8-bit tag per element. Element i of chunk c (chunk size
/// ceil(n / chunk_count)) is tagged from Rng(hash_values({seed, 0x7a6, start_c})).
std::vector<std::uint8_t> random_tags(std::size_t n, std::uint64_t seed, std::size_t chunk_count);

/// Deterministic parallel shuffle: tag, stable counting sort by tag, then a
/// Fisher-Yates pass per tag bucket seeded from (seed, tag).
std::vector<std::uint32_t> det_shuffle(std::span<const std::uint32_t> items, std::uint64_t seed,
                                       std::size_t chunk_count = kDefaultChunkCount);

/// Random split into r sub-rounds (1 <= r <= 256). Tag t goes to sub-round floor(t·r / 256).
SubRoundPartition split_sub_rounds(std::span<const std::uint32_t> items, std::uint64_t seed, std::size_t r,
                                   std::size_t chunk_count = kDefaultChunkCount);

/// Approximately uniform index in [0, n) derived from (seed, id).
constexpr std::uint64_t seeded_tiebreak(std::uint64_t seed, std::uint64_t id, std::uint64_t n) {
  return reduce_to_range(hash_combine(seed, id), n);
}

}  // namespace detpart
