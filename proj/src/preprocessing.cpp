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

#include "detpart/preprocessing.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "detpart/parallel.hpp"
#include "detpart/primitives.hpp"

namespace detpart::preprocessing {

void Graph::compute_volumes() {
  const NodeID n = num_nodes();
  node_volume.assign(n, 0.0);
#pragma omp parallel for schedule(dynamic, 512) if (parallel::worth_parallel(targets.size()))
  for (NodeID u = 0; u < n; ++u) {
    double vol = 0.0;
    for (double w : neighbor_weights(u)) vol += w;
    node_volume[u] = vol + 2.0 * self_loop[u];
  }
  total_volume = 0.0;
  for (double vol : node_volume) total_volume += vol;
}

BipartiteWeighting choose_weighting(const Hypergraph& hg, const PartitionConfig& cfg) {
  if (cfg.bipartite_weighting != BipartiteWeighting::kAuto) return cfg.bipartite_weighting;
  const HyperedgeID m = hg.num_hyperedges();
  if (m == 0) return BipartiteWeighting::kUniform;
  std::vector<std::size_t> sizes(m);
  for (HyperedgeID e = 0; e < m; ++e) sizes[e] = hg.edge_size(e);
  auto mid = sizes.begin() + m / 2;
  std::nth_element(sizes.begin(), mid, sizes.end());
  return *mid >= cfg.degree_scaled_median_edge_size ? BipartiteWeighting::kDegreeScaled
                                                     : BipartiteWeighting::kUniform;
}

Graph build_bipartite(const Hypergraph& hg, BipartiteWeighting weighting) {
  const VertexID n = hg.num_vertices();
  const HyperedgeID m = hg.num_hyperedges();
  const bool degree_scaled = weighting == BipartiteWeighting::kDegreeScaled;
  auto edge_weight = [&](VertexID v, HyperedgeID e) {
    const auto omega = static_cast<double>(hg.hyperedge_weight(e));
    if (!degree_scaled) return omega;
    return omega * static_cast<double>(hg.degree(v)) / static_cast<double>(hg.edge_size(e));
  };

  Graph g;
  const std::size_t num_nodes = static_cast<std::size_t>(n) + m;
  g.offsets.assign(num_nodes + 1, 0);
  for (VertexID v = 0; v < n; ++v) g.offsets[v + 1] = g.offsets[v] + hg.degree(v);
  for (HyperedgeID e = 0; e < m; ++e) g.offsets[n + e + 1] = g.offsets[n + e] + hg.edge_size(e);
  g.targets.resize(g.offsets.back());
  g.weights.resize(g.offsets.back());
  g.self_loop.assign(num_nodes, 0.0);

  const bool par = parallel::worth_parallel(hg.num_pins());
#pragma omp parallel for schedule(dynamic, 512) if (par)
  for (VertexID v = 0; v < n; ++v) {
    std::size_t pos = g.offsets[v];
    for (HyperedgeID e : hg.incident_nets(v)) {
      g.targets[pos] = n + e;
      g.weights[pos] = edge_weight(v, e);
      ++pos;
    }
  }
#pragma omp parallel for schedule(dynamic, 512) if (par)
  for (HyperedgeID e = 0; e < m; ++e) {
    std::size_t pos = g.offsets[n + e];
    for (VertexID v : hg.pins(e)) {
      g.targets[pos] = v;
      g.weights[pos] = edge_weight(v, e);
      ++pos;
    }
  }
  g.compute_volumes();
  return g;
}

CommunityState CommunityState::singletons(const Graph& graph) {
  CommunityState state;
  state.community_of.resize(graph.num_nodes());
  std::iota(state.community_of.begin(), state.community_of.end(), 0u);
  state.community_volume = graph.node_volume;
  return state;
}

double modularity(const Graph& graph, std::span<const CommunityID> community_of) {
  const NodeID n = graph.num_nodes();
  if (graph.total_volume <= 0.0) return 0.0;
  std::vector<double> volume(n, 0.0);
  double internal = 0.0;
  for (NodeID u = 0; u < n; ++u) {
    volume[community_of[u]] += graph.node_volume[u];
    internal += 2.0 * graph.self_loop[u];
    auto nbrs = graph.neighbors(u);
    auto ws = graph.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (community_of[nbrs[i]] == community_of[u]) internal += ws[i];
    }
  }
  double squares = 0.0;
  for (double vol : volume) squares += vol * vol;
  const double total = graph.total_volume;
  return internal / total - squares / (total * total);
}

namespace {

void apply_sorted_group(const std::vector<VolumeUpdate>& updates, std::vector<double>& community_volume) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < updates.size(); ++i) {
    if (i == 0 || updates[i].community != updates[i - 1].community) starts.push_back(i);
  }
  starts.push_back(updates.size());
  const std::size_t groups = starts.size() - 1;
#pragma omp parallel for schedule(dynamic, 64) if (parallel::worth_parallel(updates.size()))
  for (std::size_t g = 0; g < groups; ++g) {
    double& vol = community_volume[updates[starts[g]].community];
    for (std::size_t i = starts[g]; i < starts[g + 1]; ++i) vol += updates[i].delta;
  }
}

template <typename CommunityOf, typename VolumeOf>
BestMove best_move_impl(const Graph& graph, NodeID u, CommunityOf&& community_of, VolumeOf&& volume_of,
                        std::vector<double>& scratch, std::vector<CommunityID>& touched) {
  const CommunityID current = community_of(u);
  touched.clear();
  auto nbrs = graph.neighbors(u);
  auto ws = graph.neighbor_weights(u);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const CommunityID c = community_of(nbrs[i]);
    if (scratch[c] == 0.0) touched.push_back(c);
    scratch[c] += ws[i];
  }

  const double total = graph.total_volume;
  const double vol_u = graph.node_volume[u];
  const double stay = scratch[current] - vol_u * (volume_of(current) - vol_u) / total;
  BestMove best{current, 0.0};
  double best_score = stay;
  for (CommunityID c : touched) {
    if (c == current) continue;
    const double score = scratch[c] - vol_u * volume_of(c) / total;
    if (score > best_score || (score == best_score && best.target != current && c < best.target)) {
      best_score = score;
      best.target = c;
    }
  }
  for (CommunityID c : touched) scratch[c] = 0.0;
  best.gain = best.target == current ? 0.0 : best_score - stay;
  return best;
}

// Fault-injection path: moves are applied as soon as they are found and
// volumes are updated with atomic adds in arrival order.
std::size_t unordered_round(const Graph& graph, CommunityState& state, const SubRoundPartition& split) {
  const NodeID n = graph.num_nodes();
  std::size_t moved = 0;
  std::vector<std::vector<double>> scratch(static_cast<std::size_t>(parallel::max_threads()));
  for (std::size_t r = 0; r < split.num_sub_rounds(); ++r) {
    auto slice = split.sub_round(r);
#pragma omp parallel reduction(+ : moved)
    {
      auto& local = scratch[static_cast<std::size_t>(parallel::thread_id())];
      if (local.size() < n) local.assign(n, 0.0);
      std::vector<CommunityID> touched;
#pragma omp for schedule(static, 1)
      for (std::size_t i = 0; i < slice.size(); ++i) {
        const NodeID u = slice[i];
        auto community_of = [&](NodeID x) {
          return std::atomic_ref<CommunityID>(state.community_of[x]).load(std::memory_order_relaxed);
        };
        auto volume_of = [&](CommunityID c) {
          return std::atomic_ref<double>(state.community_volume[c]).load(std::memory_order_relaxed);
        };
        const BestMove move = best_move_impl(graph, u, community_of, volume_of, local, touched);
        const CommunityID from = community_of(u);
        if (move.target != from && move.gain > 0.0) {
          std::atomic_ref<CommunityID>(state.community_of[u]).store(move.target, std::memory_order_relaxed);
          std::atomic_ref<double>(state.community_volume[from]).fetch_sub(graph.node_volume[u]);
          std::atomic_ref<double>(state.community_volume[move.target]).fetch_add(graph.node_volume[u]);
          ++moved;
        }
      }
    }
  }
  return moved;
}

}  // namespace

void apply_volume_updates(std::span<const VolumeUpdate> updates, std::vector<double>& community_volume) {
  std::vector<VolumeUpdate> additions;
  std::vector<VolumeUpdate> subtractions;
  for (const VolumeUpdate& u : updates) (u.delta >= 0.0 ? additions : subtractions).push_back(u);
  auto by_community_then_node = [](const VolumeUpdate& a, const VolumeUpdate& b) {
    return a.community != b.community ? a.community < b.community : a.node < b.node;
  };
  std::stable_sort(additions.begin(), additions.end(), by_community_then_node);
  std::stable_sort(subtractions.begin(), subtractions.end(), by_community_then_node);
  apply_sorted_group(additions, community_volume);
  apply_sorted_group(subtractions, community_volume);
}

BestMove best_move(const Graph& graph, const CommunityState& state, NodeID u, std::vector<double>& scratch,
                   std::vector<CommunityID>& touched) {
  return best_move_impl(
      graph, u, [&](NodeID x) { return state.community_of[x]; },
      [&](CommunityID c) { return state.community_volume[c]; }, scratch, touched);
}

std::size_t louvain_sync_round(const Graph& graph, CommunityState& state, std::uint64_t seed, int sub_rounds,
                               const PartitionConfig& cfg) {
  const NodeID n = graph.num_nodes();
  if (n == 0 || graph.total_volume <= 0.0) return 0;
  std::vector<NodeID> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0u);
  const SubRoundPartition split =
      split_sub_rounds(nodes, seed, static_cast<std::size_t>(sub_rounds), cfg.shuffle_chunk_count);
  if (cfg.inject_unordered_volume_updates) return unordered_round(graph, state, split);

  std::vector<CommunityID> target(n);
  std::vector<std::vector<double>> scratch(static_cast<std::size_t>(parallel::max_threads()));
  std::vector<VolumeUpdate> updates;
  std::size_t moved = 0;

  for (std::size_t r = 0; r < split.num_sub_rounds(); ++r) {
    auto slice = split.sub_round(r);
#pragma omp parallel if (parallel::worth_parallel(slice.size()))
    {
      auto& local = scratch[static_cast<std::size_t>(parallel::thread_id())];
      if (local.size() < n) local.assign(n, 0.0);
      std::vector<CommunityID> touched;
#pragma omp for schedule(dynamic, 64)
      for (std::size_t i = 0; i < slice.size(); ++i) {
        const NodeID u = slice[i];
        const BestMove move = best_move(graph, state, u, local, touched);
        target[u] = move.gain > 0.0 ? move.target : state.community_of[u];
      }
    }

    updates.clear();
    for (NodeID u : slice) {
      const CommunityID from = state.community_of[u];
      if (target[u] == from) continue;
      updates.push_back({target[u], u, graph.node_volume[u]});
      updates.push_back({from, u, -graph.node_volume[u]});
      state.community_of[u] = target[u];
      ++moved;
    }
    apply_volume_updates(updates, state.community_volume);
  }
  return moved;
}

ContractedGraph contract_graph(const Graph& graph, std::span<const CommunityID> community_of) {
  const NodeID n = graph.num_nodes();
  ContractedGraph out;

  std::vector<NodeID> used(n, 0);
  for (NodeID u = 0; u < n; ++u) used[community_of[u]] = 1;
  const std::vector<NodeID> remap = prefix_sum(std::span<const NodeID>(used));
  const NodeID num_coarse = n == 0 ? 0 : remap[n - 1] + used[n - 1];

  out.coarse_of.resize(n);
#pragma omp parallel for schedule(static) if (parallel::worth_parallel(n))
  for (NodeID u = 0; u < n; ++u) out.coarse_of[u] = remap[community_of[u]];

  std::vector<NodeID> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0u);
  const auto members = counting_sort(std::span<const NodeID>(nodes), [&](NodeID u) { return out.coarse_of[u]; },
                                     num_coarse);

  std::vector<std::vector<NodeID>> coarse_targets(num_coarse);
  std::vector<std::vector<double>> coarse_weights(num_coarse);
  Graph& coarse = out.graph;
  coarse.self_loop.assign(num_coarse, 0.0);
  std::vector<std::vector<double>> scratch(static_cast<std::size_t>(parallel::max_threads()));

#pragma omp parallel if (parallel::worth_parallel(graph.num_edges()))
  {
    auto& acc = scratch[static_cast<std::size_t>(parallel::thread_id())];
    acc.assign(num_coarse, 0.0);
    std::vector<NodeID> touched;
#pragma omp for schedule(dynamic, 64)
    for (NodeID c = 0; c < num_coarse; ++c) {
      double loops = 0.0;
      double internal = 0.0;
      touched.clear();
      for (std::size_t i = members.offsets[c]; i < members.offsets[c + 1]; ++i) {
        const NodeID u = members.sorted[i];
        loops += graph.self_loop[u];
        auto nbrs = graph.neighbors(u);
        auto ws = graph.neighbor_weights(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
          const NodeID d = out.coarse_of[nbrs[j]];
          if (d == c) {
            internal += ws[j];
          } else {
            if (acc[d] == 0.0) touched.push_back(d);
            acc[d] += ws[j];
          }
        }
      }
      // every internal edge was seen from both endpoints
      coarse.self_loop[c] = loops + internal / 2.0;
      std::sort(touched.begin(), touched.end());
      coarse_targets[c] = touched;
      coarse_weights[c].resize(touched.size());
      for (std::size_t j = 0; j < touched.size(); ++j) {
        coarse_weights[c][j] = acc[touched[j]];
        acc[touched[j]] = 0.0;
      }
    }
  }

  // Use the weight computed on the smaller endpoint for both directions so
  // the adjacency stays exactly symmetric.
#pragma omp parallel for schedule(dynamic, 64) if (parallel::worth_parallel(graph.num_edges()))
  for (NodeID c = 0; c < num_coarse; ++c) {
    for (std::size_t j = 0; j < coarse_targets[c].size(); ++j) {
      const NodeID d = coarse_targets[c][j];
      if (d > c) break;
      const auto& back = coarse_targets[d];
      const auto pos = std::lower_bound(back.begin(), back.end(), c) - back.begin();
      coarse_weights[c][j] = coarse_weights[d][static_cast<std::size_t>(pos)];
    }
  }

  coarse.offsets.assign(num_coarse + 1, 0);
  for (NodeID c = 0; c < num_coarse; ++c) coarse.offsets[c + 1] = coarse.offsets[c] + coarse_targets[c].size();
  coarse.targets.resize(coarse.offsets.back());
  coarse.weights.resize(coarse.offsets.back());
#pragma omp parallel for schedule(static) if (parallel::worth_parallel(coarse.offsets.back()))
  for (NodeID c = 0; c < num_coarse; ++c) {
    std::copy(coarse_targets[c].begin(), coarse_targets[c].end(),
              coarse.targets.begin() + static_cast<std::ptrdiff_t>(coarse.offsets[c]));
    std::copy(coarse_weights[c].begin(), coarse_weights[c].end(),
              coarse.weights.begin() + static_cast<std::ptrdiff_t>(coarse.offsets[c]));
  }
  coarse.compute_volumes();
  return out;
}

std::vector<ClusterID> detect_communities(const Hypergraph& hg, const PartitionConfig& cfg) {
  const VertexID n = hg.num_vertices();
  Graph graph = build_bipartite(hg, choose_weighting(hg, cfg));
  std::vector<NodeID> node_to_current(graph.num_nodes());
  std::iota(node_to_current.begin(), node_to_current.end(), 0u);

  for (int level = 0; level < cfg.louvain_max_levels; ++level) {
    CommunityState state = CommunityState::singletons(graph);
    std::size_t moved_on_level = 0;
    for (int round = 0; round < cfg.preprocessing_rounds; ++round) {
      const std::uint64_t seed = hash_values({cfg.seed, 0x10a7, static_cast<std::uint64_t>(level),
                                              static_cast<std::uint64_t>(round)});
      const std::size_t moved = louvain_sync_round(graph, state, seed, cfg.preprocessing_sub_rounds, cfg);
      moved_on_level += moved;
      if (moved == 0) break;
    }
    if (moved_on_level == 0) break;
    ContractedGraph contracted = contract_graph(graph, state.community_of);
    for (NodeID& x : node_to_current) x = contracted.coarse_of[x];
    graph = std::move(contracted.graph);
  }

  // restrict to the vertex nodes and compact the ids
  std::vector<ClusterID> used(graph.num_nodes(), 0);
  for (VertexID v = 0; v < n; ++v) used[node_to_current[v]] = 1;
  const std::vector<ClusterID> remap = prefix_sum(std::span<const ClusterID>(used));
  std::vector<ClusterID> communities(n);
  for (VertexID v = 0; v < n; ++v) communities[v] = remap[node_to_current[v]];
  return communities;
}

}  // namespace detpart::preprocessing
