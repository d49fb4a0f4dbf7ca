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

#include "detpart/partition_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detpart/parallel.hpp"
#include "detpart/rng.hpp"

namespace detpart {

namespace {
constexpr std::int64_t kEpsilonScale = 1'000'000'000;
}

Weight compute_max_block_weight(Weight total_weight, BlockID k, double epsilon) {
  const std::int64_t eps_scaled = std::llround(epsilon * static_cast<double>(kEpsilonScale));
  const int128 per_block = (static_cast<int128>(total_weight) + k - 1) / k;
  return static_cast<Weight>(per_block * (kEpsilonScale + eps_scaled) / kEpsilonScale);
}

PartitionState::PartitionState(const Hypergraph& hg, BlockID k, Weight max_block_weight,
                               std::vector<BlockID> assignment)
    : k_(k), max_block_weight_(max_block_weight), words_per_edge_((static_cast<std::size_t>(k) + 63) / 64) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  reset(hg, std::move(assignment));
}

void PartitionState::reset(const Hypergraph& hg, std::vector<BlockID> assignment) {
  if (assignment.size() != hg.num_vertices()) throw std::invalid_argument("assignment size mismatch");
  for (BlockID b : assignment) {
    if (b < 0 || b >= k_) throw std::invalid_argument("block id out of range: " + std::to_string(b));
  }
  assignment_ = std::move(assignment);
  rebuild(hg);
}

void PartitionState::rebuild(const Hypergraph& hg) {
  const std::size_t m = hg.num_hyperedges();
  const std::size_t k = static_cast<std::size_t>(k_);
  pin_count_.assign(m * k, 0);
  connectivity_bits_.assign(m * words_per_edge_, 0);
  edge_lock_.assign(m, 0);
  block_weight_.assign(k, 0);

  const bool par = parallel::worth_parallel(hg.num_pins());
#pragma omp parallel for schedule(dynamic, 256) if (par)
  for (HyperedgeID e = 0; e < m; ++e) {
    std::uint32_t* counts = pin_count_.data() + static_cast<std::size_t>(e) * k;
    std::uint64_t* bits = connectivity_bits_.data() + static_cast<std::size_t>(e) * words_per_edge_;
    for (VertexID v : hg.pins(e)) {
      const auto b = static_cast<std::size_t>(assignment_[v]);
      if (counts[b]++ == 0) bits[b >> 6] |= 1ULL << (b & 63);
    }
  }
  // integer sums are order independent
#pragma omp parallel for schedule(static) if (parallel::worth_parallel(assignment_.size()))
  for (VertexID v = 0; v < assignment_.size(); ++v) {
    parallel::fetch_add(block_weight_[static_cast<std::size_t>(assignment_[v])], hg.vertex_weight(v));
  }
}

Gain PartitionState::move(const Hypergraph& hg, VertexID v, BlockID from, BlockID to) {
  const auto s = static_cast<std::size_t>(from);
  const auto t = static_cast<std::size_t>(to);
  const std::size_t k = static_cast<std::size_t>(k_);
  Gain attributed = 0;
  for (HyperedgeID e : hg.incident_nets(v)) {
    parallel::SpinGuard guard(edge_lock_[e]);
    std::uint32_t* counts = pin_count_.data() + static_cast<std::size_t>(e) * k;
    std::uint64_t* bits = connectivity_bits_.data() + static_cast<std::size_t>(e) * words_per_edge_;
    if (--counts[s] == 0) {
      attributed += hg.hyperedge_weight(e);
      bits[s >> 6] &= ~(1ULL << (s & 63));
    }
    if (++counts[t] == 1) {
      attributed -= hg.hyperedge_weight(e);
      bits[t >> 6] |= 1ULL << (t & 63);
    }
  }
  assignment_[v] = to;
  parallel::fetch_add(block_weight_[s], -hg.vertex_weight(v));
  parallel::fetch_add(block_weight_[t], hg.vertex_weight(v));
  return attributed;
}

bool PartitionState::is_balanced() const {
  return std::all_of(block_weight_.begin(), block_weight_.end(), [&](Weight w) { return w <= max_block_weight_; });
}

void PartitionState::validate(const Hypergraph& hg) const {
  PartitionState fresh(hg, k_, max_block_weight_, assignment_);
  if (fresh.pin_count_ != pin_count_) throw std::logic_error("pin counts diverged from recount");
  if (fresh.connectivity_bits_ != connectivity_bits_) throw std::logic_error("connectivity sets diverged from recount");
  if (fresh.block_weight_ != block_weight_) throw std::logic_error("block weights diverged from recount");
}

Gain connectivity_metric(const Hypergraph& hg, std::span<const BlockID> assignment) {
  Gain total = 0;
  const HyperedgeID m = hg.num_hyperedges();
#pragma omp parallel if (parallel::worth_parallel(hg.num_pins()))
  {
    std::vector<BlockID> seen;
#pragma omp for schedule(dynamic, 256) reduction(+ : total)
    for (HyperedgeID e = 0; e < m; ++e) {
      seen.clear();
      for (VertexID v : hg.pins(e)) seen.push_back(assignment[v]);
      std::sort(seen.begin(), seen.end());
      const auto lambda = std::unique(seen.begin(), seen.end()) - seen.begin();
      if (lambda > 1) total += (lambda - 1) * hg.hyperedge_weight(e);
    }
  }
  return total;
}

Gain connectivity_metric(const Hypergraph& hg, const PartitionState& state) {
  return connectivity_metric(hg, std::span<const BlockID>(state.assignment()));
}

std::vector<Weight> block_weights(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID k) {
  std::vector<Weight> weights(static_cast<std::size_t>(k), 0);
  for (VertexID v = 0; v < hg.num_vertices(); ++v) weights[static_cast<std::size_t>(assignment[v])] += hg.vertex_weight(v);
  return weights;
}

bool check_balance(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID k, double epsilon) {
  const Weight max_weight = compute_max_block_weight(hg.total_vertex_weight(), k, epsilon);
  const auto weights = block_weights(hg, assignment, k);
  return std::all_of(weights.begin(), weights.end(), [&](Weight w) { return w <= max_weight; });
}

bool check_balance(const Hypergraph& hg, const PartitionState& state, double epsilon) {
  return check_balance(hg, std::span<const BlockID>(state.assignment()), state.k(), epsilon);
}

double imbalance(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID k) {
  const auto weights = block_weights(hg, assignment, k);
  const Weight heaviest = weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
  const Weight perfect = (hg.total_vertex_weight() + k - 1) / k;
  if (perfect == 0) return 0.0;
  return static_cast<double>(heaviest) / static_cast<double>(perfect) - 1.0;
}

}  // namespace detpart
