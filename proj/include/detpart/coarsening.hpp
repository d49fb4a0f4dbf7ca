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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "detpart/config.hpp"
#include "detpart/hypergraph.hpp"

namespace detpart::coarsening {

struct ContractionResult {
  Hypergraph coarse;
  std::vector<VertexID> vertex_map;        // fine vertex -> coarse vertex
  std::vector<HyperedgeID> hyperedge_map;  // fine hyperedge -> coarse hyperedge or kRemovedHyperedge
};

/// CL = contraction_limit_factor · k.
VertexID contraction_limit(const PartitionConfig& cfg);

/// CW_max = min(L_max, ⌊c(V)/CL⌋), at least 1.
Weight max_cluster_weight(const Hypergraph& hg, const PartitionConfig& cfg);

struct RatingScratch {
  std::vector<double> rating;
  std::vector<ClusterID> touched;
  std::vector<ClusterID> ties;

  explicit RatingScratch(VertexID n = 0) : rating(n, 0.0) {}
};

/// Heavy-edge rating r(u,C) = Σ ω(e)/(|e|−1) over hyperedges shared with C,
/// restricted to pins of u's community. Clusters that would exceed
/// `max_cluster_weight` are skipped; ties are broken by seeded_tiebreak.
std::optional<ClusterID> heavy_edge_rating(const Hypergraph& hg, const Clustering& clustering,
                                           std::span<const ClusterID> communities, VertexID u,
                                           Weight max_cluster_weight, std::uint64_t seed,
                                           std::uint32_t max_rated_hyperedge_size, RatingScratch& scratch);

struct Join {
  ClusterID target;
  Weight weight;
  VertexID vertex;
};

/// Approves every join whose target's opportunistic weight stays within the
/// cap. The rest are sorted by (target, weight, vertex) and approved per
/// target while the cluster weight stays within the cap; once a join is
/// rejected, later joins into the same target are rejected too.
std::vector<VertexID> approve_joins(std::span<const Join> joins, std::span<const Weight> cluster_weight,
                                    std::span<const Weight> opportunistic_weight, Weight max_cluster_weight);

/// One clustering pass from singletons. Only vertices that are still
/// singletons propose; proposals are approved per sub-round.
Clustering coarsening_pass(const Hypergraph& hg, std::span<const ClusterID> communities, const PartitionConfig& cfg,
                           Weight max_cluster_weight, std::uint64_t seed);

/// Contracts the clustering. Cluster ids are arbitrary labels < |V|; coarse
/// vertex ids follow ascending label order. Single-pin hyperedges are
/// dropped and identical hyperedges merged into their smallest id.
ContractionResult contract_hypergraph(const Hypergraph& hg, std::span<const ClusterID> cluster_of);

/// Pin-set hash used to find duplicate hyperedges: wrapping sum of mix64(pin+1).
std::uint64_t pin_set_hash(std::span<const VertexID> pins);

struct Hierarchy {
  std::vector<ContractionResult> levels;            // finest to coarsest
  std::vector<std::vector<ClusterID>> communities;  // communities on each coarse level
  Weight max_cluster_weight = 0;

  bool empty() const { return levels.empty(); }
  const Hypergraph& coarsest(const Hypergraph& input) const { return levels.empty() ? input : levels.back().coarse; }
};

/// Coarsens until at most CL vertices remain, a pass makes no progress, or a
/// pass removes less than min_coarsening_reduction of the vertices.
Hierarchy coarsen_to_limit(const Hypergraph& hg, std::span<const ClusterID> communities, const PartitionConfig& cfg);

}  // namespace detpart::coarsening
