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
#include <set>
#include <tuple>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

#include "detpart/parallel.hpp"
#include "detpart/preprocessing.hpp"
#include "detpart/reference.hpp"
#include "test_util.hpp"

namespace detpart::preprocessing {
namespace {

using ::testing::DoubleEq;
using ::testing::ElementsAre;

Graph make_graph(NodeID n, const std::vector<std::tuple<NodeID, NodeID, double>>& edges) {
  std::vector<std::vector<std::pair<NodeID, double>>> adj(n);
  for (auto [u, v, w] : edges) {
    adj[u].emplace_back(v, w);
    adj[v].emplace_back(u, w);
  }
  Graph g;
  g.self_loop.assign(n, 0.0);
  for (NodeID u = 0; u < n; ++u) {
    std::sort(adj[u].begin(), adj[u].end());
    for (auto [v, w] : adj[u]) {
      g.targets.push_back(v);
      g.weights.push_back(w);
    }
    g.offsets.push_back(g.targets.size());
  }
  g.compute_volumes();
  return g;
}

Graph random_graph(std::mt19937_64& rng, NodeID n, double density) {
  std::vector<std::tuple<NodeID, NodeID, double>> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (NodeID u = 0; u < n; ++u) {
    for (NodeID v = u + 1; v < n; ++v) {
      if (coin(rng) < density) edges.emplace_back(u, v, static_cast<double>(1 + rng() % 4));
    }
  }
  return make_graph(n, edges);
}

// Q computed from the textbook definition with an edge list.
double modularity_oracle(const Graph& g, const std::vector<CommunityID>& community) {
  double internal = 0.0;
  std::vector<double> volume(g.num_nodes(), 0.0);
  for (NodeID u = 0; u < g.num_nodes(); ++u) {
    internal += 2.0 * g.self_loop[u];
    double vol = 2.0 * g.self_loop[u];
    for (std::size_t i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
      vol += g.weights[i];
      if (community[g.targets[i]] == community[u]) internal += g.weights[i];
    }
    volume[community[u]] += vol;
  }
  double total = 0.0;
  for (double v : volume) total += v;
  double squares = 0.0;
  for (double v : volume) squares += v * v;
  return internal / total - squares / (total * total);
}

CommunityState state_from(const Graph& g, std::vector<CommunityID> community) {
  CommunityState s;
  s.community_volume.assign(g.num_nodes(), 0.0);
  for (NodeID u = 0; u < g.num_nodes(); ++u) s.community_volume[community[u]] += g.node_volume[u];
  s.community_of = std::move(community);
  return s;
}

TEST(BuildBipartite, UniformWeights) {
  auto hg = Hypergraph::from_pin_lists(2, {{0, 1}});
  Graph g = build_bipartite(hg, BipartiteWeighting::kUniform);
  ASSERT_EQ(g.num_nodes(), 3u);
  EXPECT_THAT(std::vector<NodeID>(g.neighbors(2).begin(), g.neighbors(2).end()), ElementsAre(0, 1));
  EXPECT_THAT(g.weights, ::testing::Each(DoubleEq(1.0)));
  EXPECT_DOUBLE_EQ(g.total_volume, 4.0);
}

TEST(BuildBipartite, DegreeScaledWeights) {
  auto hg = Hypergraph::from_pin_lists(2, {{0, 1}});
  Graph g = build_bipartite(hg, BipartiteWeighting::kDegreeScaled);
  EXPECT_THAT(g.weights, ::testing::Each(DoubleEq(0.5)));

  auto weighted = Hypergraph::from_pin_lists(3, {{0, 1, 2}, {0, 1}}, {6, 2});
  Graph w = build_bipartite(weighted, BipartiteWeighting::kDegreeScaled);
  // vertex 0 has degree 2; edge 0 has size 3 and weight 6
  EXPECT_DOUBLE_EQ(w.neighbor_weights(0)[0], 6.0 * 2 / 3);
  EXPECT_DOUBLE_EQ(w.neighbor_weights(0)[1], 2.0 * 2 / 2);
}

TEST(BuildBipartite, WeightingChoiceFollowsMedianEdgeSize) {
  PartitionConfig cfg;
  cfg.degree_scaled_median_edge_size = 3;
  auto small = Hypergraph::from_pin_lists(4, {{0, 1}, {1, 2}, {0, 1, 2, 3}});
  EXPECT_EQ(choose_weighting(small, cfg), BipartiteWeighting::kUniform);
  auto large = Hypergraph::from_pin_lists(4, {{0, 1, 2}, {1, 2, 3}, {0, 1}});
  EXPECT_EQ(choose_weighting(large, cfg), BipartiteWeighting::kDegreeScaled);
  cfg.bipartite_weighting = BipartiteWeighting::kUniform;
  EXPECT_EQ(choose_weighting(large, cfg), BipartiteWeighting::kUniform);
}

TEST(Modularity, Singletons) {
  Graph g = make_graph(2, {{0, 1, 1.0}});
  EXPECT_DOUBLE_EQ(modularity(g, std::vector<CommunityID>{0, 1}), -0.5);
  EXPECT_DOUBLE_EQ(modularity(g, std::vector<CommunityID>{0, 0}), 0.0);
}

TEST(Modularity, MatchesOracleAndIgnoresLabels) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const NodeID n = static_cast<NodeID>(4 + rng() % 25);
    Graph g = random_graph(rng, n, 0.3);
    if (g.total_volume == 0.0) continue;
    std::vector<CommunityID> community(n);
    for (auto& c : community) c = static_cast<CommunityID>(rng() % 4);
    const double q = modularity(g, community);
    EXPECT_NEAR(q, modularity_oracle(g, community), 1e-12);
    std::vector<CommunityID> relabeled(n);
    for (NodeID u = 0; u < n; ++u) relabeled[u] = (community[u] * 3 + 1) % 4;
    EXPECT_NEAR(modularity(g, relabeled), q, 1e-12);
  }
}

// Among neighbor communities, the returned move has the largest ΔQ and its
// gain is ΔQ · vol(V) / 2.
TEST(BestMove, MatchesBruteForceDeltaQ) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const NodeID n = static_cast<NodeID>(2 + rng() % 19);
    Graph g = random_graph(rng, n, 0.35);
    if (g.total_volume == 0.0) continue;
    std::vector<CommunityID> community(n);
    for (auto& c : community) c = static_cast<CommunityID>(rng() % std::max<NodeID>(1, n / 2));
    CommunityState state = state_from(g, community);
    std::vector<double> scratch(n, 0.0);
    std::vector<CommunityID> touched;
    const double q0 = modularity_oracle(g, community);
    const double scale = g.total_volume / 2.0;
    for (NodeID u = 0; u < n; ++u) {
      std::set<CommunityID> candidates;
      for (NodeID v : g.neighbors(u)) {
        if (community[v] != community[u]) candidates.insert(community[v]);
      }
      double best_delta = 0.0;
      for (CommunityID c : candidates) {
        auto moved = community;
        moved[u] = c;
        best_delta = std::max(best_delta, modularity_oracle(g, moved) - q0);
      }
      const BestMove move = best_move(g, state, u, scratch, touched);
      ASSERT_TRUE(std::all_of(scratch.begin(), scratch.end(), [](double x) { return x == 0.0; }));
      if (best_delta * scale <= 1e-9) {
        // no strictly improving neighbor move beyond rounding noise
        ASSERT_LE(move.gain, 1e-9);
        continue;
      }
      ASSERT_NE(move.target, community[u]);
      ASSERT_TRUE(candidates.count(move.target));
      auto moved = community;
      moved[u] = move.target;
      const double delta = modularity_oracle(g, moved) - q0;
      ASSERT_NEAR(delta, best_delta, 1e-12);
      ASSERT_NEAR(move.gain, delta * scale, 1e-9 * g.total_volume);
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(BestMove, TiesGoToSmallestCommunity) {
  // node 0 hangs between two symmetric singleton communities 1 and 2
  Graph g = make_graph(3, {{0, 1, 1.0}, {0, 2, 1.0}});
  CommunityState state = state_from(g, {0, 2, 1});
  std::vector<double> scratch(3, 0.0);
  std::vector<CommunityID> touched;
  EXPECT_EQ(best_move(g, state, 0, scratch, touched).target, 1u);
}

double sequential_sum(const std::vector<VolumeUpdate>& updates, CommunityID c, double start) {
  std::vector<VolumeUpdate> adds;
  std::vector<VolumeUpdate> subs;
  for (const auto& u : updates) {
    if (u.community == c) (u.delta >= 0.0 ? adds : subs).push_back(u);
  }
  auto by_node = [](const VolumeUpdate& a, const VolumeUpdate& b) { return a.node < b.node; };
  std::sort(adds.begin(), adds.end(), by_node);
  std::sort(subs.begin(), subs.end(), by_node);
  double vol = start;
  for (const auto& u : adds) vol += u.delta;
  for (const auto& u : subs) vol += u.delta;
  return vol;
}

TEST(VolumeUpdates, AdversarialFloats) {
  const std::vector<VolumeUpdate> updates{{0, 0, 1e16}, {0, 1, 1.0}, {0, 2, -1e16}, {0, 3, 1.0}};
  const double expected = sequential_sum(updates, 0, 0.0);
  for (int t : {1, 2, 8}) {
    parallel::ScopedThreadCount threads(t);
    std::vector<double> vol{0.0};
    apply_volume_updates(updates, vol);
    EXPECT_EQ(vol[0], expected);
    auto reversed = updates;
    std::reverse(reversed.begin(), reversed.end());
    std::vector<double> vol2{0.0};
    apply_volume_updates(reversed, vol2);
    EXPECT_EQ(vol2[0], expected);
  }
}

TEST(VolumeUpdates, BitExactAgainstFixedOrder) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> magnitude(-20.0, 20.0);
  for (int trial = 0; trial < 20; ++trial) {
    const CommunityID communities = static_cast<CommunityID>(1 + rng() % 500);
    const std::size_t n = 1 + rng() % 40000;
    std::vector<VolumeUpdate> updates;
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = std::ldexp(1.0 + std::abs(magnitude(rng)), static_cast<int>(magnitude(rng) * 2));
      updates.push_back({static_cast<CommunityID>(rng() % communities), static_cast<NodeID>(i),
                         rng() % 2 ? delta : -delta});
    }
    std::shuffle(updates.begin(), updates.end(), rng);
    std::vector<double> start(communities);
    for (auto& s : start) s = std::ldexp(1.0, static_cast<int>(rng() % 40));
    std::vector<double> expected(communities);
    for (CommunityID c = 0; c < communities; ++c) expected[c] = sequential_sum(updates, c, start[c]);
    auto ref = start;
    reference::apply_volume_updates(updates, ref);
    ASSERT_EQ(ref, expected);
    for (int t : {1, 3, 8}) {
      parallel::ScopedThreadCount threads(t);
      auto vol = start;
      apply_volume_updates(updates, vol);
      ASSERT_EQ(vol, expected) << "threads " << t;
    }
  }
}

TEST(ContractGraph, TwoNodesIntoOne) {
  Graph g = make_graph(2, {{0, 1, 1.0}});
  auto contracted = contract_graph(g, std::vector<CommunityID>{0, 0});
  ASSERT_EQ(contracted.graph.num_nodes(), 1u);
  EXPECT_EQ(contracted.graph.num_edges(), 0u);
  EXPECT_DOUBLE_EQ(contracted.graph.self_loop[0], 1.0);
  EXPECT_DOUBLE_EQ(contracted.graph.node_volume[0], 2.0);
  EXPECT_THAT(contracted.coarse_of, ElementsAre(0, 0));
}

TEST(ContractGraph, PreservesVolumeAndModularity) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const NodeID n = static_cast<NodeID>(2 + rng() % 60);
    Graph g = random_graph(rng, n, 0.2);
    if (g.total_volume == 0.0) continue;
    std::vector<CommunityID> community(n);
    for (auto& c : community) c = static_cast<CommunityID>(rng() % n);
    auto contracted = contract_graph(g, community);
    const Graph& c = contracted.graph;
    EXPECT_NEAR(c.total_volume, g.total_volume, 1e-9 * g.total_volume);
    std::vector<CommunityID> identity(c.num_nodes());
    std::iota(identity.begin(), identity.end(), 0u);
    EXPECT_NEAR(modularity(c, identity), modularity(g, community), 1e-12);
    for (NodeID u = 0; u < c.num_nodes(); ++u) {
      for (std::size_t i = c.offsets[u]; i < c.offsets[u + 1]; ++i) {
        const NodeID v = c.targets[i];
        ASSERT_NE(u, v);
        const auto back = c.neighbors(v);
        const auto pos = std::find(back.begin(), back.end(), u) - back.begin();
        ASSERT_LT(static_cast<std::size_t>(pos), back.size());
        ASSERT_EQ(c.neighbor_weights(v)[static_cast<std::size_t>(pos)], c.weights[i]);
      }
    }
  }
}

TEST(LouvainRound, ConservesVolume) {
  auto hg = testing::load_corpus("vlsi_small");
  PartitionConfig cfg;
  Graph g = build_bipartite(hg, BipartiteWeighting::kUniform);
  CommunityState state = CommunityState::singletons(g);
  for (int round = 0; round < 5; ++round) louvain_sync_round(g, state, 100 + round, 16, cfg);
  std::vector<double> recomputed(g.num_nodes(), 0.0);
  for (NodeID u = 0; u < g.num_nodes(); ++u) recomputed[state.community_of[u]] += g.node_volume[u];
  double sum = 0.0;
  for (NodeID c = 0; c < g.num_nodes(); ++c) {
    ASSERT_NEAR(state.community_volume[c], recomputed[c], 1e-9 * g.total_volume);
    sum += state.community_volume[c];
  }
  EXPECT_NEAR(sum, g.total_volume, 1e-9 * g.total_volume);
}

TEST(LouvainRound, IndependentOfThreadCount) {
  auto hg = testing::load_corpus("grid_64");
  PartitionConfig cfg;
  Graph g = build_bipartite(hg, BipartiteWeighting::kDegreeScaled);
  std::vector<CommunityState> results;
  for (int t : {1, 2, 8}) {
    parallel::ScopedThreadCount threads(t);
    CommunityState state = CommunityState::singletons(g);
    for (int round = 0; round < 3; ++round) louvain_sync_round(g, state, 7 + round, 1 + round * 5, cfg);
    results.push_back(std::move(state));
  }
  for (std::size_t i = 1; i < results.size(); ++i) {
    ASSERT_EQ(results[i].community_of, results[0].community_of);
    ASSERT_EQ(results[i].community_volume, results[0].community_volume);
  }
}

TEST(LouvainRound, StopsAtFixedPoint) {
  std::mt19937_64 rng(29);
  PartitionConfig cfg;
  Graph g = random_graph(rng, 40, 0.15);
  CommunityState state = CommunityState::singletons(g);
  int rounds = 0;
  while (louvain_sync_round(g, state, static_cast<std::uint64_t>(rounds), 8, cfg) > 0 && rounds < 200) ++rounds;
  ASSERT_LT(rounds, 200);
  const auto before = state.community_of;
  EXPECT_EQ(louvain_sync_round(g, state, 999, 8, cfg), 0u);
  EXPECT_EQ(state.community_of, before);
  std::vector<double> scratch(g.num_nodes(), 0.0);
  std::vector<CommunityID> touched;
  for (NodeID u = 0; u < g.num_nodes(); ++u) EXPECT_LE(best_move(g, state, u, scratch, touched).gain, 0.0);
}

// All set partitions of {0..n-1} as restricted growth strings.
template <typename F>
void for_each_set_partition(std::size_t n, F&& f) {
  std::vector<CommunityID> a(n, 0);
  std::vector<CommunityID> max_prefix(n, 0);
  for (;;) {
    f(a);
    std::size_t i = n;
    while (i-- > 1) {
      if (a[i] <= max_prefix[i - 1]) break;
    }
    if (i == 0 || i >= n) return;
    ++a[i];
    for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
    for (std::size_t j = i; j < n; ++j) max_prefix[j] = std::max(max_prefix[j - 1], a[j]);
  }
}

TEST(DetectCommunities, DisjointDenseComponentsSeparate) {
  auto hg = Hypergraph::from_pin_lists(6, {{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}, {3, 4}, {4, 5}, {3, 5}, {3, 4, 5}});
  // star expansion has 12 nodes, small enough to enumerate
  auto small = Hypergraph::from_pin_lists(6, {{0, 1}, {1, 2}, {0, 1, 2}, {3, 4}, {4, 5}, {3, 4, 5}});
  Graph g = build_bipartite(small, BipartiteWeighting::kUniform);
  ASSERT_EQ(g.num_nodes(), 12u);
  double best_q = -1.0;
  std::vector<CommunityID> best;
  for_each_set_partition(g.num_nodes(), [&](const std::vector<CommunityID>& p) {
    const double q = modularity(g, p);
    if (q > best_q + 1e-12) {
      best_q = q;
      best = p;
    }
  });
  for (NodeID a = 0; a < 3; ++a) {
    for (NodeID b = 3; b < 6; ++b) ASSERT_NE(best[a], best[b]);
  }

  PartitionConfig cfg;
  for (const Hypergraph* h : {&hg, &small}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      cfg.seed = seed;
      auto communities = detect_communities(*h, cfg);
      for (VertexID a = 0; a < 3; ++a) {
        for (VertexID b = 3; b < 6; ++b) EXPECT_NE(communities[a], communities[b]) << "seed " << seed;
      }
    }
  }
}

TEST(DetectCommunities, ConsecutiveIdsAndDeterminism) {
  auto hg = testing::load_corpus("spm_banded");
  PartitionConfig cfg;
  cfg.seed = 3;
  std::vector<std::vector<ClusterID>> runs;
  for (int t : {1, 4, 8}) {
    parallel::ScopedThreadCount threads(t);
    runs.push_back(detect_communities(hg, cfg));
  }
  EXPECT_EQ(runs[1], runs[0]);
  EXPECT_EQ(runs[2], runs[0]);
  const ClusterID max_id = *std::max_element(runs[0].begin(), runs[0].end());
  std::vector<char> seen(max_id + 1, 0);
  for (ClusterID c : runs[0]) seen[c] = 1;
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](char s) { return s; }));
  EXPECT_GT(max_id, 1u);
  EXPECT_LT(max_id + 1, hg.num_vertices());
}

TEST(DetectCommunities, TrivialInputs) {
  PartitionConfig cfg;
  EXPECT_THAT(detect_communities(Hypergraph::from_pin_lists(1, {}), cfg), ElementsAre(0));
  EXPECT_THAT(detect_communities(Hypergraph::from_pin_lists(3, {}), cfg), ElementsAre(0, 1, 2));
}

}  // namespace
}  // namespace detpart::preprocessing
