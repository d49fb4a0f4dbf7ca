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

#include <span>
#include <vector>

#include "detpart/types.hpp"

namespace detpart {

/// Static weighted hypergraph stored as two CSR arrays: pins per hyperedge
/// and incident hyperedges per vertex. Incident hyperedges of every vertex
/// are sorted ascending. Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Builds the incidence lists from pin lists. Throws std::invalid_argument
  /// on out-of-range or duplicate pins, non-positive weights or size mismatches.
  /// Empty weight vectors mean unit weights.
  Hypergraph(VertexID num_vertices, std::vector<PinIndex> pin_offsets, std::vector<VertexID> pins,
             std::vector<Weight> hyperedge_weights = {}, std::vector<Weight> vertex_weights = {});

  static Hypergraph from_pin_lists(VertexID num_vertices, const std::vector<std::vector<VertexID>>& nets,
                                   std::vector<Weight> hyperedge_weights = {},
                                   std::vector<Weight> vertex_weights = {});

  VertexID num_vertices() const { return num_vertices_; }
  HyperedgeID num_hyperedges() const { return static_cast<HyperedgeID>(hyperedge_weight_.size()); }
  PinIndex num_pins() const { return pins_.size(); }

  std::span<const VertexID> pins(HyperedgeID e) const {
    return {pins_.data() + pin_offsets_[e], pins_.data() + pin_offsets_[e + 1]};
  }
  std::span<const HyperedgeID> incident_nets(VertexID v) const {
    return {incident_nets_.data() + incidence_offsets_[v], incident_nets_.data() + incidence_offsets_[v + 1]};
  }
  std::size_t edge_size(HyperedgeID e) const { return pin_offsets_[e + 1] - pin_offsets_[e]; }
  std::size_t degree(VertexID v) const { return incidence_offsets_[v + 1] - incidence_offsets_[v]; }

  Weight vertex_weight(VertexID v) const { return vertex_weight_[v]; }
  Weight hyperedge_weight(HyperedgeID e) const { return hyperedge_weight_[e]; }
  Weight total_vertex_weight() const { return total_vertex_weight_; }
  Weight max_vertex_weight() const { return max_vertex_weight_; }

  const std::vector<PinIndex>& pin_offsets() const { return pin_offsets_; }
  const std::vector<VertexID>& pin_array() const { return pins_; }
  const std::vector<Weight>& vertex_weights() const { return vertex_weight_; }
  const std::vector<Weight>& hyperedge_weights() const { return hyperedge_weight_; }

  /// Sum of hyperedge weights.
  Weight total_hyperedge_weight() const;

  /// Re-checks every structural invariant; throws std::logic_error on violation.
  void validate() const;

 private:
  void build_incidence();

  VertexID num_vertices_ = 0;
  std::vector<PinIndex> pin_offsets_{0};
  std::vector<VertexID> pins_;
  std::vector<PinIndex> incidence_offsets_{0};
  std::vector<HyperedgeID> incident_nets_;
  std::vector<Weight> vertex_weight_;
  std::vector<Weight> hyperedge_weight_;
  Weight total_vertex_weight_ = 0;
  Weight max_vertex_weight_ = 0;
};

/// Vertex → cluster map with aggregated cluster weights.
struct Clustering {
  std::vector<ClusterID> cluster_of;
  std::vector<Weight> cluster_weight;  // indexed by cluster id, size num_vertices

  static Clustering singletons(const Hypergraph& hg);
};

}  // namespace detpart
