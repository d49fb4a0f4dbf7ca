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

#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

#include "detpart/parallel.hpp"
#include "detpart/partition_state.hpp"
#include "test_util.hpp"

namespace detpart {
namespace {

using ::testing::ElementsAre;

Hypergraph two_edges() { return Hypergraph::from_pin_lists(4, {{0, 1, 2}, {2, 3}}); }

TEST(Connectivity, HandExamples) {
  auto hg = two_edges();
  EXPECT_EQ(connectivity_metric(hg, std::vector<BlockID>{0, 0, 1, 1}), 1);
  EXPECT_EQ(connectivity_metric(hg, std::vector<BlockID>{0, 1, 0, 1}), 2);
  EXPECT_EQ(connectivity_metric(hg, std::vector<BlockID>{0, 0, 0, 0}), 0);
}

TEST(Connectivity, MatchesSetCount) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto hg = testing::random_hypergraph(rng, {.max_vertices = 40, .max_edges = 60, .max_edge_size = 10,
                                                .allow_single_pin = true, .max_edge_weight = 7});
    const BlockID k = static_cast<BlockID>(1 + rng() % 8);
    auto assignment = testing::random_assignment(rng, hg.num_vertices(), k);
    ASSERT_EQ(connectivity_metric(hg, assignment), testing::brute_force_connectivity(hg, assignment));
    PartitionState state(hg, k, 1000, assignment);
    ASSERT_EQ(connectivity_metric(hg, state), testing::brute_force_connectivity(hg, assignment));
  }
}

TEST(Balance, HandExamples) {
  auto hg = two_edges();
  EXPECT_TRUE(check_balance(hg, std::vector<BlockID>{0, 0, 1, 1}, 2, 0.03));
  EXPECT_FALSE(check_balance(hg, std::vector<BlockID>{0, 0, 0, 1}, 2, 0.03));
  EXPECT_TRUE(check_balance(hg, std::vector<BlockID>{0, 0, 0, 0}, 1, 0.03));
  EXPECT_THAT(block_weights(hg, std::vector<BlockID>{0, 0, 0, 1}, 2), ElementsAre(3, 1));
  EXPECT_DOUBLE_EQ(imbalance(hg, std::vector<BlockID>{0, 0, 0, 1}, 2), 0.5);
}

TEST(Balance, MaxBlockWeightMatchesIntegerFormula) {
  EXPECT_EQ(compute_max_block_weight(4, 2, 0.03), 2);
  EXPECT_EQ(compute_max_block_weight(100, 2, 0.03), 51);
  EXPECT_EQ(compute_max_block_weight(1000, 3, 0.03), 344);
  EXPECT_EQ(compute_max_block_weight(7, 7, 0.5), 1);
  for (Weight total = 1; total < 5000; total += 7) {
    for (BlockID k : {1, 2, 3, 4, 8, 16, 64}) {
      ASSERT_EQ(compute_max_block_weight(total, k, 0.03), testing::max_block_weight_3pct(total, k))
          << total << " " << k;
    }
  }
}

TEST(PartitionState, AttributedGainExamples) {
  // single-pin hyperedge: moving its pin never changes λ
  auto single = Hypergraph::from_pin_lists(2, {{0}}, {5});
  PartitionState s1(single, 2, 10, {0, 1});
  EXPECT_EQ(s1.move(single, 0, 0, 1), 0);

  // joining the other pin of a 2-pin hyperedge gains ω
  auto pair = Hypergraph::from_pin_lists(2, {{0, 1}}, {4});
  PartitionState s2(pair, 2, 10, {0, 1});
  EXPECT_EQ(s2.move(pair, 0, 0, 1), 4);
  EXPECT_EQ(s2.connectivity(0), 1u);
  EXPECT_EQ(s2.move(pair, 1, 1, 0), -4);
}

TEST(PartitionState, PinCountsAndConnectivitySets) {
  auto hg = two_edges();
  PartitionState state(hg, 3, 4, {0, 0, 1, 2});
  EXPECT_EQ(state.pin_count(0, 0), 2u);
  EXPECT_EQ(state.pin_count(0, 1), 1u);
  EXPECT_EQ(state.pin_count(1, 2), 1u);
  EXPECT_TRUE(state.in_connectivity_set(1, 1));
  EXPECT_FALSE(state.in_connectivity_set(1, 0));
  EXPECT_EQ(state.connectivity(0), 2u);
  std::vector<BlockID> blocks;
  state.for_each_connected_block(1, [&](BlockID b) { blocks.push_back(b); });
  EXPECT_THAT(blocks, ElementsAre(1, 2));
  EXPECT_THAT(state.block_weights(), ElementsAre(2, 1, 1));
}

TEST(PartitionState, SequentialMovesKeepInvariants) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto hg = testing::random_hypergraph(rng, {.max_vertices = 30, .max_edges = 40, .max_edge_size = 6,
                                                .max_vertex_weight = 3, .max_edge_weight = 5});
    const BlockID k = static_cast<BlockID>(2 + rng() % 70);
    auto assignment = testing::random_assignment(rng, hg.num_vertices(), k);
    PartitionState state(hg, k, 1000, assignment);
    Gain metric = testing::brute_force_connectivity(hg, assignment);
    for (int step = 0; step < 50; ++step) {
      const VertexID v = static_cast<VertexID>(rng() % hg.num_vertices());
      const BlockID to = static_cast<BlockID>(rng() % static_cast<std::uint64_t>(k));
      const BlockID from = state.block(v);
      if (to == from) continue;
      const Gain gain = state.move(hg, v, from, to);
      assignment[v] = to;
      const Gain after = testing::brute_force_connectivity(hg, assignment);
      ASSERT_EQ(gain, metric - after);
      metric = after;
    }
    ASSERT_NO_THROW(state.validate(hg));
    ASSERT_EQ(state.assignment(), assignment);
  }
}

TEST(PartitionState, ConcurrentMovesAttributeExactly) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    auto hg = testing::random_hypergraph(rng, {.min_vertices = 50, .max_vertices = 200, .max_edges = 300,
                                                .max_edge_size = 12, .max_edge_weight = 9});
    const BlockID k = static_cast<BlockID>(2 + rng() % 6);
    auto assignment = testing::random_assignment(rng, hg.num_vertices(), k);
    PartitionState state(hg, k, 1 << 20, assignment);
    const Gain before = connectivity_metric(hg, state);
    std::vector<std::pair<VertexID, BlockID>> moves;
    for (VertexID v = 0; v < hg.num_vertices(); ++v) {
      if (rng() % 2) moves.emplace_back(v, static_cast<BlockID>(rng() % static_cast<std::uint64_t>(k)));
    }
    Gain total = 0;
    parallel::ScopedThreadCount threads(8);
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 1)
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const auto [v, to] = moves[i];
      if (state.block(v) != to) total += state.move(hg, v, state.block(v), to);
    }
    ASSERT_NO_THROW(state.validate(hg));
    ASSERT_EQ(total, before - testing::brute_force_connectivity(hg, state.assignment()));
  }
}

TEST(PartitionState, ResetRebuilds) {
  auto hg = two_edges();
  PartitionState state(hg, 2, 2, {0, 0, 1, 1});
  state.reset(hg, {1, 1, 0, 0});
  EXPECT_THAT(state.block_weights(), ElementsAre(2, 2));
  EXPECT_TRUE(state.is_balanced());
  EXPECT_NO_THROW(state.validate(hg));
}

}  // namespace
}  // namespace detpart
