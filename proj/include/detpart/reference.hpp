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

// Straightforward serial versions of the parallel kernels. They share no
// code with the parallel implementations and serve as test oracles and
// benchmark baselines.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "detpart/preprocessing.hpp"
#include "detpart/primitives.hpp"

namespace detpart::reference {

template <typename T, typename KeyFn>
CountingSortResult<T> counting_sort(std::span<const T> items, KeyFn&& key, std::size_t max_key) {
  CountingSortResult<T> result;
  result.offsets.assign(max_key + 1, 0);
  for (const T& item : items) ++result.offsets[static_cast<std::size_t>(key(item)) + 1];
  for (std::size_t k = 0; k < max_key; ++k) result.offsets[k + 1] += result.offsets[k];
  result.sorted.resize(items.size());
  std::vector<std::size_t> cursor(result.offsets.begin(), result.offsets.end() - 1);
  for (const T& item : items) result.sorted[cursor[static_cast<std::size_t>(key(item))]++] = item;
  return result;
}

template <typename T>
std::vector<T> prefix_sum(std::span<const T> values) {
  std::vector<T> out(values.size());
  T running{0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = running;
    running = checked_add(running, values[i]);
  }
  return out;
}

std::vector<std::uint32_t> det_shuffle(std::span<const std::uint32_t> items, std::uint64_t seed,
                                       std::size_t chunk_count = kDefaultChunkCount);

SubRoundPartition split_sub_rounds(std::span<const std::uint32_t> items, std::uint64_t seed, std::size_t r,
                                   std::size_t chunk_count = kDefaultChunkCount);

/// Additions, then subtractions, each in (community, node) order, one at a time.
void apply_volume_updates(std::span<const preprocessing::VolumeUpdate> updates, std::vector<double>& community_volume);

/// Step-by-step simulation of the two-sequence traversal.
std::pair<std::size_t, std::size_t> longest_feasible_prefixes(std::span<const Weight> a, std::span<const Weight> b,
                                                              Weight budget_s, Weight budget_t);

}  // namespace detpart::reference
