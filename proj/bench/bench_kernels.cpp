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

// Serial reference kernels against the OpenMP versions. The thread count is
// the second benchmark argument; the reference ignores it.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "detpart/parallel.hpp"
#include "detpart/preprocessing.hpp"
#include "detpart/primitives.hpp"
#include "detpart/reference.hpp"
#include "detpart/refinement.hpp"

namespace {

using namespace detpart;

std::vector<std::uint32_t> random_keys(std::size_t n, std::uint32_t max_key) {
  std::mt19937_64 rng(42);
  std::vector<std::uint32_t> keys(n);
  for (auto& k : keys) k = static_cast<std::uint32_t>(rng() % max_key);
  return keys;
}

std::vector<preprocessing::VolumeUpdate> random_updates(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> delta(-100.0, 100.0);
  std::vector<preprocessing::VolumeUpdate> updates(n);
  for (std::size_t i = 0; i < n; ++i) {
    updates[i] = {static_cast<preprocessing::CommunityID>(rng() % (n / 8 + 1)),
                  static_cast<preprocessing::NodeID>(i), delta(rng)};
  }
  return updates;
}

std::vector<Weight> random_cumulative(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Weight> w(n);
  for (auto& x : w) x = static_cast<Weight>(1 + rng() % 16);
  return refinement::cumulative_weights(w);
}

void CountingSortReference(benchmark::State& state) {
  const auto keys = random_keys(static_cast<std::size_t>(state.range(0)), 1024);
  auto key = [](std::uint32_t x) { return x; };
  for (auto _ : state) benchmark::DoNotOptimize(reference::counting_sort(std::span<const std::uint32_t>(keys), key, 1024));
}

void CountingSortParallel(benchmark::State& state) {
  const auto keys = random_keys(static_cast<std::size_t>(state.range(0)), 1024);
  auto key = [](std::uint32_t x) { return x; };
  parallel::ScopedThreadCount threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(counting_sort(std::span<const std::uint32_t>(keys), key, 1024));
}

void PrefixSumReference(benchmark::State& state) {
  std::vector<std::uint64_t> values(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(reference::prefix_sum(std::span<const std::uint64_t>(values)));
}

void PrefixSumParallel(benchmark::State& state) {
  std::vector<std::uint64_t> values(static_cast<std::size_t>(state.range(0)), 3);
  parallel::ScopedThreadCount threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(prefix_sum(std::span<const std::uint64_t>(values)));
}

void DetShuffleReference(benchmark::State& state) {
  std::vector<std::uint32_t> items(static_cast<std::size_t>(state.range(0)));
  std::iota(items.begin(), items.end(), 0U);
  for (auto _ : state) benchmark::DoNotOptimize(reference::det_shuffle(items, 1));
}

void DetShuffleParallel(benchmark::State& state) {
  std::vector<std::uint32_t> items(static_cast<std::size_t>(state.range(0)));
  std::iota(items.begin(), items.end(), 0U);
  parallel::ScopedThreadCount threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(det_shuffle(items, 1));
}

void VolumeUpdatesReference(benchmark::State& state) {
  const auto updates = random_updates(static_cast<std::size_t>(state.range(0)));
  std::vector<double> volume(updates.size() / 8 + 1, 1e6);
  for (auto _ : state) {
    reference::apply_volume_updates(updates, volume);
    benchmark::DoNotOptimize(volume.data());
  }
}

void VolumeUpdatesParallel(benchmark::State& state) {
  const auto updates = random_updates(static_cast<std::size_t>(state.range(0)));
  std::vector<double> volume(updates.size() / 8 + 1, 1e6);
  parallel::ScopedThreadCount threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    preprocessing::apply_volume_updates(updates, volume);
    benchmark::DoNotOptimize(volume.data());
  }
}

void PrefixesReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_cumulative(n, 1);
  const auto b = random_cumulative(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::longest_feasible_prefixes(a, b, 64, 64));
}

void PrefixesParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_cumulative(n, 1);
  const auto b = random_cumulative(n, 2);
  parallel::ScopedThreadCount threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(refinement::longest_feasible_prefixes(a, b, 64, 64));
}

void SerialSizes(benchmark::internal::Benchmark* b) {
  for (std::int64_t n : {1 << 12, 1 << 16, 1 << 20}) b->Args({n});
}

void ParallelSizes(benchmark::internal::Benchmark* b) {
  for (std::int64_t n : {1 << 12, 1 << 16, 1 << 20}) {
    for (std::int64_t t : {1, 2, 4, 8}) b->Args({n, t});
  }
}

BENCHMARK(CountingSortReference)->Apply(SerialSizes)->UseRealTime();
BENCHMARK(CountingSortParallel)->Apply(ParallelSizes)->UseRealTime();
BENCHMARK(PrefixSumReference)->Apply(SerialSizes)->UseRealTime();
BENCHMARK(PrefixSumParallel)->Apply(ParallelSizes)->UseRealTime();
BENCHMARK(DetShuffleReference)->Apply(SerialSizes)->UseRealTime();
BENCHMARK(DetShuffleParallel)->Apply(ParallelSizes)->UseRealTime();
BENCHMARK(VolumeUpdatesReference)->Apply(SerialSizes)->UseRealTime();
BENCHMARK(VolumeUpdatesParallel)->Apply(ParallelSizes)->UseRealTime();
BENCHMARK(PrefixesReference)->Apply(SerialSizes)->UseRealTime();
BENCHMARK(PrefixesParallel)->Apply(ParallelSizes)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
