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

#include "detpart/reference.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "detpart/refinement.hpp"
#include "detpart/rng.hpp"

namespace detpart::reference {

namespace {

std::vector<std::uint8_t> tags_of(std::size_t n, std::uint64_t seed, std::size_t chunk_count) {
  if (chunk_count == 0) throw std::invalid_argument("chunk count must be positive");
  std::vector<std::uint8_t> tags(n);
  if (n == 0) return tags;
  const std::size_t chunk_size = (n + chunk_count - 1) / chunk_count;
  Rng rng(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % chunk_size == 0) rng = Rng(hash_values({seed, 0x7a6, i}));
    tags[i] = static_cast<std::uint8_t>(rng.next() >> 56);
  }
  return tags;
}

std::vector<std::uint32_t> stable_by_tag(std::span<const std::uint32_t> items, const std::vector<std::uint8_t>& tags) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tags[a] < tags[b]; });
  std::vector<std::uint32_t> out(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = items[order[i]];
  return out;
}

}  // namespace

std::vector<std::uint32_t> det_shuffle(std::span<const std::uint32_t> items, std::uint64_t seed,
                                       std::size_t chunk_count) {
  const auto tags = tags_of(items.size(), seed, chunk_count);
  std::vector<std::uint32_t> out = stable_by_tag(items, tags);
  std::vector<std::uint8_t> sorted_tags(tags);
  std::sort(sorted_tags.begin(), sorted_tags.end());
  std::size_t begin = 0;
  while (begin < out.size()) {
    std::size_t end = begin;
    while (end < out.size() && sorted_tags[end] == sorted_tags[begin]) ++end;
    Rng rng(hash_values({seed, 0x5b0f, sorted_tags[begin]}));
    for (std::size_t i = end; i > begin + 1; --i) std::swap(out[i - 1], out[begin + rng.below(i - begin)]);
    begin = end;
  }
  return out;
}

SubRoundPartition split_sub_rounds(std::span<const std::uint32_t> items, std::uint64_t seed, std::size_t r,
                                   std::size_t chunk_count) {
  if (r < 1 || r > kNumTags) throw std::invalid_argument("sub-round count must lie in [1, 256]");
  const auto tags = tags_of(items.size(), seed, chunk_count);
  SubRoundPartition out;
  out.round_offsets.push_back(0);
  for (std::size_t b = 0; b < r; ++b) {
    for (std::size_t t = 0; t < kNumTags; ++t) {
      if (t * r / kNumTags != b) continue;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (tags[i] == t) out.permuted_items.push_back(items[i]);
      }
    }
    out.round_offsets.push_back(out.permuted_items.size());
  }
  return out;
}

void apply_volume_updates(std::span<const preprocessing::VolumeUpdate> updates, std::vector<double>& community_volume) {
  std::vector<preprocessing::VolumeUpdate> sorted(updates.begin(), updates.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const bool a_add = a.delta >= 0.0;
    const bool b_add = b.delta >= 0.0;
    if (a_add != b_add) return a_add;
    if (a.community != b.community) return a.community < b.community;
    return a.node < b.node;
  });
  for (const auto& u : sorted) community_volume[u.community] += u.delta;
}

std::pair<std::size_t, std::size_t> longest_feasible_prefixes(std::span<const Weight> a, std::span<const Weight> b,
                                                              Weight budget_s, Weight budget_t) {
  return refinement::longest_feasible_prefixes_sequential(a, b, budget_s, budget_t);
}

}  // namespace detpart::reference
