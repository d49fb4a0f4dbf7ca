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

// Community detection on the star expansion of a hypergraph with a
// synchronous (sub-round based) Louvain algorithm. Volume updates are
// aggregated in a fixed order so floating point results do not depend on the
// thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "detpart/config.hpp"
#include "detpart/hypergraph.hpp"

namespace detpart::preprocessing {

using NodeID = std::uint32_t;
using CommunityID = std::uint32_t;

/// Undirected weighted graph. Self-loops are kept apart from the adjacency
/// and count twice towards the volume of their node.
struct Graph {
  std::vector<std::size_t> offsets{0};
  std::vector<NodeID> targets;
  std::vector<double> weights;
  std::vector<double> self_loop;
  std::vector<double> node_volume;
  double total_volume = 0.0;

  NodeID num_nodes() const { return static_cast<NodeID>(offsets.size() - 1); }
  std::size_t num_edges() const { return targets.size(); }
  std::span<const NodeID> neighbors(NodeID u) const {
    return {targets.data() + offsets[u], targets.data() + offsets[u + 1]};
  }
  std::span<const double> neighbor_weights(NodeID u) const {
    return {weights.data() + offsets[u], weights.data() + offsets[u + 1]};
  }

  /// vol(u) = Σ adjacent weights + 2·self_loop(u); total summed in node order.
  void compute_volumes();
};

/// Resolves kAuto: degree-scaled weights iff the median hyperedge size is at
/// least cfg.degree_scaled_median_edge_size.
BipartiteWeighting choose_weighting(const Hypergraph& hg, const PartitionConfig& cfg);

/// Star expansion: nodes [0, |V|) are vertices, [|V|, |V|+|E|) hyperedges.
Graph build_bipartite(const Hypergraph& hg, BipartiteWeighting weighting);

struct CommunityState {
  std::vector<CommunityID> community_of;
  std::vector<double> community_volume;

  static CommunityState singletons(const Graph& graph);
};

struct VolumeUpdate {
  CommunityID community;
  NodeID node;
  double delta;
};

/// Q = cov − Σ_C vol(C)² / vol(V)², evaluated sequentially in node order.
double modularity(const Graph& graph, std::span<const CommunityID> community_of);

/// Applies all non-negative deltas, then all negative ones. Within each group
/// updates are ordered by (community, node); distinct communities are updated
/// in parallel.
void apply_volume_updates(std::span<const VolumeUpdate> updates, std::vector<double>& community_volume);

struct BestMove {
  CommunityID target;
  double gain;  // ΔQ · vol(V) / 2 relative to staying; target == current if no positive move
};

/// Best modularity move for u against the given (frozen) state. Ties go to
/// the smallest community id.
BestMove best_move(const Graph& graph, const CommunityState& state, NodeID u, std::vector<double>& scratch,
                   std::vector<CommunityID>& touched);

/// One round: nodes are split into `sub_rounds` random sub-rounds; in each,
/// moves are computed against the frozen state and applied at the barrier.
/// Returns the number of moved nodes.
std::size_t louvain_sync_round(const Graph& graph, CommunityState& state, std::uint64_t seed, int sub_rounds,
                               const PartitionConfig& cfg);

struct ContractedGraph {
  Graph graph;
  std::vector<NodeID> coarse_of;  // fine node -> coarse node
};

ContractedGraph contract_graph(const Graph& graph, std::span<const CommunityID> community_of);

/// Multilevel Louvain on the star expansion, restricted to the vertices.
/// Returned community ids are consecutive.
std::vector<ClusterID> detect_communities(const Hypergraph& hg, const PartitionConfig& cfg);

}  // namespace detpart::preprocessing
