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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

#include "detpart/parallel.hpp"
#include "detpart/primitives.hpp"
#include "detpart/reference.hpp"
#include "detpart/rng.hpp"

namespace detpart {
namespace {

using ::testing::ElementsAre;

// Textbook xoshiro256** with SplitMix64 seeding, written out independently.
class XoshiroOracle {
 public:
  explicit XoshiroOracle(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix(seed);
  }
  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  static std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t s_[4];
};

TEST(Rng, MatchesReferenceRecurrence) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL, ~0ULL}) {
    Rng rng(seed);
    XoshiroOracle oracle(seed);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(rng.next(), oracle.next()) << "seed " << seed << " step " << i;
  }
}

TEST(Rng, SplitMixKnownValue) {
  // First SplitMix64 output for seed 0.
  EXPECT_EQ(mix64(0x9e3779b97f4a7c15ULL), 0xe220a8397b1dcdafULL);
}

TEST(Rng, BelowStaysInRange) {
  Rng rng(7);
  for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 1000ULL, (1ULL << 40) + 3}) {
    for (int i = 0; i < 1000; ++i) ASSERT_LT(rng.below(n), n);
  }
}

TEST(CountingSort, HandExample) {
  const std::vector<char> items{'a', 'b', 'c', 'd'};
  const std::vector<int> keys{2, 0, 2, 1};
  auto result = counting_sort(std::span<const char>(items),
                              [&](char c) { return keys[static_cast<std::size_t>(c - 'a')]; }, 3);
  EXPECT_THAT(result.sorted, ElementsAre('b', 'd', 'a', 'c'));
  EXPECT_THAT(result.offsets, ElementsAre(0, 1, 2, 4));
}

TEST(CountingSort, AlreadySortedIsUnchanged) {
  std::vector<std::uint32_t> items(10000);
  for (std::uint32_t i = 0; i < items.size(); ++i) items[i] = i / 100;
  parallel::ScopedThreadCount threads(4);
  auto result = counting_sort(std::span<const std::uint32_t>(items), [](std::uint32_t x) { return x; }, 100);
  EXPECT_EQ(result.sorted, items);
}

TEST(CountingSort, MatchesStableSortForAnyThreadCount) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 20000)(rng);
    const std::size_t max_key = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
    std::vector<std::uint64_t> items(n);
    for (std::size_t i = 0; i < n; ++i) items[i] = (rng() % max_key) << 32 | i;
    auto key = [](std::uint64_t x) { return x >> 32; };
    std::vector<std::uint64_t> expected = items;
    std::stable_sort(expected.begin(), expected.end(), [&](auto a, auto b) { return key(a) < key(b); });
    for (int t : {1, 3, 8}) {
      parallel::ScopedThreadCount threads(t);
      auto result = counting_sort(std::span<const std::uint64_t>(items), key, max_key);
      ASSERT_EQ(result.sorted, expected) << "n=" << n << " threads=" << t;
      ASSERT_EQ(result.offsets.size(), max_key + 1);
      for (std::size_t k = 0; k < max_key; ++k) {
        for (std::size_t i = result.offsets[k]; i < result.offsets[k + 1]; ++i) ASSERT_EQ(key(result.sorted[i]), k);
      }
    }
  }
}

TEST(PrefixSum, HandExample) {
  EXPECT_THAT(prefix_sum(std::vector<int>{1, 1, 2}), ElementsAre(0, 1, 2));
  EXPECT_TRUE(prefix_sum(std::vector<int>{}).empty());
}

TEST(PrefixSum, MatchesExclusiveScan) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {1u, 17u, 4095u, 4096u, 100000u}) {
    std::vector<std::int64_t> values(n);
    for (auto& v : values) v = static_cast<std::int64_t>(rng() % 1000) - 200;
    std::vector<std::int64_t> expected(n);
    std::exclusive_scan(values.begin(), values.end(), expected.begin(), std::int64_t{0});
    for (int t : {1, 2, 8}) {
      parallel::ScopedThreadCount threads(t);
      ASSERT_EQ(prefix_sum(values), expected) << "n=" << n << " threads=" << t;
    }
    EXPECT_EQ(reference::prefix_sum(std::span<const std::int64_t>(values)), expected);
  }
}

TEST(PrefixSum, ReportsOverflow) {
  const std::int32_t big = std::numeric_limits<std::int32_t>::max() / 2 + 1;
  EXPECT_THROW(prefix_sum(std::vector<std::int32_t>{big, big}), std::overflow_error);
  std::vector<std::int32_t> many(10000, 1 << 20);
  parallel::ScopedThreadCount threads(4);
  EXPECT_THROW(prefix_sum(many), std::overflow_error);
}

std::vector<std::uint32_t> iota(std::size_t n, std::uint32_t start = 0) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), start);
  return v;
}

TEST(DetShuffle, Empty) { EXPECT_TRUE(det_shuffle({}, 1).empty()); }

TEST(DetShuffle, IsPermutation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng() % 30000;
    const auto items = iota(n, static_cast<std::uint32_t>(rng() % 1000));
    auto shuffled = det_shuffle(items, rng());
    std::sort(shuffled.begin(), shuffled.end());
    ASSERT_EQ(shuffled, items);
  }
}

TEST(DetShuffle, IndependentOfThreadCountAndMatchesReference) {
  for (std::size_t n : {5u, 300u, 5000u, 70000u}) {
    const auto items = iota(n);
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      const auto expected = reference::det_shuffle(items, seed);
      for (int t : {1, 2, 4, 8}) {
        parallel::ScopedThreadCount threads(t);
        ASSERT_EQ(det_shuffle(items, seed), expected) << "n=" << n << " seed=" << seed << " threads=" << t;
      }
    }
  }
}

TEST(DetShuffle, DependsOnSeed) {
  const auto items = iota(1000);
  EXPECT_NE(det_shuffle(items, 1), det_shuffle(items, 2));
  EXPECT_NE(det_shuffle(items, 1), items);
}

TEST(SplitSubRounds, SingleRoundKeepsEverything) {
  const auto items = iota(100);
  auto split = split_sub_rounds(items, 5, 1);
  ASSERT_EQ(split.num_sub_rounds(), 1u);
  EXPECT_EQ(split.sub_round(0).size(), 100u);
}

TEST(SplitSubRounds, OneRoundPerTag) {
  const std::size_t n = 5000;
  const auto items = iota(n);
  const auto tags = random_tags(n, 11, kDefaultChunkCount);
  auto split = split_sub_rounds(items, 11, 256);
  ASSERT_EQ(split.num_sub_rounds(), 256u);
  for (std::size_t b = 0; b < 256; ++b) {
    std::vector<std::uint32_t> expected;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (tags[i] == b) expected.push_back(i);
    }
    std::vector<std::uint32_t> got(split.sub_round(b).begin(), split.sub_round(b).end());
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, expected) << "sub-round " << b;
  }
}

TEST(SplitSubRounds, CoversInputAndSizesAreBinomial) {
  const std::size_t n = 100000;
  const auto items = iota(n);
  for (std::size_t r : {2u, 3u, 7u, 16u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto split = split_sub_rounds(items, seed, r);
      auto all = split.permuted_items;
      std::sort(all.begin(), all.end());
      ASSERT_EQ(all, items);
      const double mean = static_cast<double>(n) / static_cast<double>(r);
      const double sigma = std::sqrt(mean * (1.0 - 1.0 / static_cast<double>(r)));
      for (std::size_t s = 0; s < r; ++s) {
        // bucket sizes are multiples of 256/r tags, so allow the rounding slack too
        const double slack = static_cast<double>(n) / 256.0;
        EXPECT_NEAR(static_cast<double>(split.sub_round(s).size()), mean, 4 * sigma + slack)
            << "r=" << r << " seed=" << seed << " round=" << s;
      }
    }
  }
}

TEST(SplitSubRounds, IndependentOfThreadCountAndMatchesReference) {
  const auto items = iota(50000, 7);
  for (std::size_t r : {1u, 3u, 16u, 256u}) {
    const auto expected = reference::split_sub_rounds(items, 4, r);
    for (int t : {1, 2, 8}) {
      parallel::ScopedThreadCount threads(t);
      auto split = split_sub_rounds(items, 4, r);
      ASSERT_EQ(split.permuted_items, expected.permuted_items);
      ASSERT_EQ(split.round_offsets, expected.round_offsets);
    }
  }
}

TEST(SeededTiebreak, SingleChoice) {
  for (std::uint64_t id = 0; id < 100; ++id) EXPECT_EQ(seeded_tiebreak(3, id, 1), 0u);
}

TEST(SeededTiebreak, UniformChiSquare) {
  constexpr std::uint64_t kChoices = 7;
  constexpr std::uint64_t kDraws = 1000000;
  std::vector<double> counts(kChoices, 0.0);
  for (std::uint64_t id = 0; id < kDraws; ++id) counts[seeded_tiebreak(12345, id, kChoices)] += 1.0;
  const double expected = static_cast<double>(kDraws) / kChoices;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // upper 0.001 quantile of chi-square with 6 degrees of freedom
  EXPECT_LT(chi2, 22.458);
}

}  // namespace
}  // namespace detpart
