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

#include "detpart/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "detpart/parallel.hpp"
#include "detpart/primitives.hpp"

namespace detpart {

Hypergraph::Hypergraph(VertexID num_vertices, std::vector<PinIndex> pin_offsets, std::vector<VertexID> pins,
                       std::vector<Weight> hyperedge_weights, std::vector<Weight> vertex_weights)
    : num_vertices_(num_vertices),
      pin_offsets_(std::move(pin_offsets)),
      pins_(std::move(pins)),
      vertex_weight_(std::move(vertex_weights)),
      hyperedge_weight_(std::move(hyperedge_weights)) {
  if (pin_offsets_.empty() || pin_offsets_.front() != 0 || pin_offsets_.back() != pins_.size()) {
    throw std::invalid_argument("pin offsets do not delimit the pin array");
  }
  const std::size_t m = pin_offsets_.size() - 1;
  for (std::size_t e = 0; e < m; ++e) {
    if (pin_offsets_[e] > pin_offsets_[e + 1]) throw std::invalid_argument("pin offsets must be non-decreasing");
  }
  if (hyperedge_weight_.empty()) hyperedge_weight_.assign(m, 1);
  if (vertex_weight_.empty()) vertex_weight_.assign(num_vertices_, 1);
  if (hyperedge_weight_.size() != m) throw std::invalid_argument("hyperedge weight count mismatch");
  if (vertex_weight_.size() != num_vertices_) throw std::invalid_argument("vertex weight count mismatch");

  for (Weight w : hyperedge_weight_) {
    if (w <= 0) throw std::invalid_argument("hyperedge weights must be positive");
  }
  for (Weight w : vertex_weight_) {
    if (w <= 0) throw std::invalid_argument("vertex weights must be positive");
    total_vertex_weight_ = checked_add(total_vertex_weight_, w);
    max_vertex_weight_ = std::max(max_vertex_weight_, w);
  }

  // pin range and duplicate check; stamp[v] holds the last hyperedge + 1 that saw v
  std::vector<HyperedgeID> stamp(num_vertices_, 0);
  for (std::size_t e = 0; e < m; ++e) {
    for (PinIndex i = pin_offsets_[e]; i < pin_offsets_[e + 1]; ++i) {
      const VertexID v = pins_[i];
      if (v >= num_vertices_) {
        throw std::invalid_argument("pin " + std::to_string(v) + " out of range in hyperedge " + std::to_string(e));
      }
      if (stamp[v] == e + 1) {
        throw std::invalid_argument("duplicate pin " + std::to_string(v) + " in hyperedge " + std::to_string(e));
      }
      stamp[v] = static_cast<HyperedgeID>(e + 1);
    }
  }
  build_incidence();
}

Hypergraph Hypergraph::from_pin_lists(VertexID num_vertices, const std::vector<std::vector<VertexID>>& nets,
                                      std::vector<Weight> hyperedge_weights, std::vector<Weight> vertex_weights) {
  std::vector<PinIndex> offsets(nets.size() + 1, 0);
  for (std::size_t e = 0; e < nets.size(); ++e) offsets[e + 1] = offsets[e] + nets[e].size();
  std::vector<VertexID> pins;
  pins.reserve(offsets.back());
  for (const auto& net : nets) pins.insert(pins.end(), net.begin(), net.end());
  return Hypergraph(num_vertices, std::move(offsets), std::move(pins), std::move(hyperedge_weights),
                    std::move(vertex_weights));
}

void Hypergraph::build_incidence() {
  const HyperedgeID m = num_hyperedges();
  std::vector<PinIndex> degree(num_vertices_, 0);
  const bool par = parallel::worth_parallel(pins_.size());

#pragma omp parallel for schedule(static) if (par)
  for (std::size_t i = 0; i < pins_.size(); ++i) parallel::fetch_add<PinIndex>(degree[pins_[i]], 1);

  std::vector<PinIndex> start = prefix_sum(std::span<const PinIndex>(degree));
  incidence_offsets_.assign(num_vertices_ + 1, 0);
  std::copy(start.begin(), start.end(), incidence_offsets_.begin());
  incidence_offsets_[num_vertices_] = pins_.size();
  incident_nets_.assign(pins_.size(), 0);

#pragma omp parallel for schedule(dynamic, 256) if (par)
  for (HyperedgeID e = 0; e < m; ++e) {
    for (PinIndex i = pin_offsets_[e]; i < pin_offsets_[e + 1]; ++i) {
      const PinIndex slot = parallel::fetch_add<PinIndex>(start[pins_[i]], 1);
      incident_nets_[slot] = e;
    }
  }

  // placement order above depends on scheduling; sorting restores a canonical order
#pragma omp parallel for schedule(dynamic, 256) if (par)
  for (VertexID v = 0; v < num_vertices_; ++v) {
    std::sort(incident_nets_.begin() + static_cast<std::ptrdiff_t>(incidence_offsets_[v]),
              incident_nets_.begin() + static_cast<std::ptrdiff_t>(incidence_offsets_[v + 1]));
  }
}

Weight Hypergraph::total_hyperedge_weight() const {
  Weight total = 0;
  for (Weight w : hyperedge_weight_) total += w;
  return total;
}

void Hypergraph::validate() const {
  auto fail = [](const std::string& what) { throw std::logic_error("hypergraph invariant violated: " + what); };
  if (incidence_offsets_.size() != static_cast<std::size_t>(num_vertices_) + 1) fail("incidence offsets size");
  Weight total = 0;
  for (VertexID v = 0; v < num_vertices_; ++v) {
    total += vertex_weight_[v];
    auto nets = incident_nets(v);
    if (!std::is_sorted(nets.begin(), nets.end())) fail("incident nets not sorted");
    if (std::adjacent_find(nets.begin(), nets.end()) != nets.end()) fail("duplicate incident net");
    for (HyperedgeID e : nets) {
      auto p = pins(e);
      if (std::find(p.begin(), p.end(), v) == p.end()) fail("incident net without matching pin");
    }
  }
  if (total != total_vertex_weight_) fail("total vertex weight");
  PinIndex pin_sum = 0;
  for (HyperedgeID e = 0; e < num_hyperedges(); ++e) {
    for (VertexID v : pins(e)) {
      if (v >= num_vertices_) fail("pin out of range");
      auto nets = incident_nets(v);
      if (!std::binary_search(nets.begin(), nets.end(), e)) fail("pin without matching incident net");
    }
    pin_sum += edge_size(e);
  }
  if (pin_sum != incident_nets_.size()) fail("pin count mismatch");
}

Clustering Clustering::singletons(const Hypergraph& hg) {
  Clustering c;
  c.cluster_of.resize(hg.num_vertices());
  std::iota(c.cluster_of.begin(), c.cluster_of.end(), 0u);
  c.cluster_weight = hg.vertex_weights();
  return c;
}

}  // namespace detpart
