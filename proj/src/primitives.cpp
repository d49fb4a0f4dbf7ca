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

#include "detpart/primitives.hpp"

#include <numeric>
#include <stdexcept>

namespace detpart {

namespace {

constexpr std::uint64_t kTagDomain = 0x7a6;
constexpr std::uint64_t kBucketShuffleDomain = 0x5b0f;

struct TagSorted {
  std::vector<std::uint32_t> items;
  std::vector<std::size_t> tag_offsets;  // kNumTags + 1 entries
};

TagSorted sort_by_random_tag(std::span<const std::uint32_t> items, std::uint64_t seed, std::size_t chunk_count) {
  const std::size_t n = items.size();
  const std::vector<std::uint8_t> tags = random_tags(n, seed, chunk_count);
  std::vector<std::uint32_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0u);
  auto sorted = counting_sort(std::span<const std::uint32_t>(positions),
                              [&](std::uint32_t pos) { return tags[pos]; }, kNumTags);

  TagSorted out;
  out.items.resize(n);
#pragma omp parallel for schedule(static) if (parallel::worth_parallel(n))
  for (std::size_t i = 0; i < n; ++i) out.items[i] = items[sorted.sorted[i]];
  out.tag_offsets = std::move(sorted.offsets);
  return out;
}

}  // namespace

std::vector<std::uint8_t> random_tags(std::size_t n, std::uint64_t seed, std::size_t chunk_count) {
  if (chunk_count == 0) throw std::invalid_argument("chunk count must be positive");
  std::vector<std::uint8_t> tags(n);
  if (n == 0) return tags;
  const std::size_t chunk_size = (n + chunk_count - 1) / chunk_count;
  const std::size_t num_chunks = (n + chunk_size - 1) / chunk_size;
#pragma omp parallel for schedule(static) if (parallel::worth_parallel(n))
  for (std::size_t c = 0; c < num_chunks; ++c) {
    const std::size_t begin = c * chunk_size;
    const std::size_t end = std::min(n, begin + chunk_size);
    Rng rng(hash_values({seed, kTagDomain, begin}));
    for (std::size_t i = begin; i < end; ++i) tags[i] = static_cast<std::uint8_t>(rng.next() >> 56);
  }
  return tags;
}

std::vector<std::uint32_t> det_shuffle(std::span<const std::uint32_t> items, std::uint64_t seed,
                                       std::size_t chunk_count) {
  if (items.empty()) return {};
  TagSorted sorted = sort_by_random_tag(items, seed, chunk_count);
#pragma omp parallel for schedule(dynamic, 8) if (parallel::worth_parallel(items.size()))
  for (std::size_t tag = 0; tag < kNumTags; ++tag) {
    const std::size_t begin = sorted.tag_offsets[tag];
    const std::size_t end = sorted.tag_offsets[tag + 1];
    Rng rng(hash_values({seed, kBucketShuffleDomain, tag}));
    for (std::size_t i = end; i > begin + 1; --i) {
      const std::size_t j = begin + rng.below(i - begin);
      std::swap(sorted.items[i - 1], sorted.items[j]);
    }
  }
  return std::move(sorted.items);
}

SubRoundPartition split_sub_rounds(std::span<const std::uint32_t> items, std::uint64_t seed, std::size_t r,
                                   std::size_t chunk_count) {
  if (r < 1 || r > kNumTags) throw std::invalid_argument("sub-round count must lie in [1, 256]");
  TagSorted sorted = sort_by_random_tag(items, seed, chunk_count);
  SubRoundPartition out;
  out.permuted_items = std::move(sorted.items);
  out.round_offsets.resize(r + 1);
  // First tag of sub-round b is the smallest t with floor(t·r/256) >= b, i.e. ceil(b·256/r).
  for (std::size_t b = 0; b <= r; ++b) {
    const std::size_t first_tag = (b * kNumTags + r - 1) / r;
    out.round_offsets[b] = sorted.tag_offsets[first_tag];
  }
  return out;
}

}  // namespace detpart
