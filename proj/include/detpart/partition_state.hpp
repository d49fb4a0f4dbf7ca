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

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "detpart/hypergraph.hpp"
#include "detpart/types.hpp"

namespace detpart {

/// L_max = (1+ε)·⌈c(V)/k⌉, rounded down. ε is taken in units of 10⁻⁹ and the
/// product is evaluated in 128-bit integers so the bound is identical on every
/// platform.
Weight compute_max_block_weight(Weight total_weight, BlockID k, double epsilon);

/// k-way partition together with the pin counts Φ(e,i), connectivity sets
/// Λ(e) (one bitset per hyperedge) and block weights.
///
/// move() implements the attributed-gain move and may be called concurrently
/// for distinct vertices; every other mutator is single-threaded.
class PartitionState {
 public:
  PartitionState() = default;
  PartitionState(const Hypergraph& hg, BlockID k, Weight max_block_weight, std::vector<BlockID> assignment);

  BlockID k() const { return k_; }
  VertexID num_vertices() const { return static_cast<VertexID>(assignment_.size()); }
  Weight max_block_weight() const { return max_block_weight_; }
  void set_max_block_weight(Weight w) { max_block_weight_ = w; }

  BlockID block(VertexID v) const { return assignment_[v]; }
  const std::vector<BlockID>& assignment() const { return assignment_; }
  Weight block_weight(BlockID b) const { return block_weight_[static_cast<std::size_t>(b)]; }
  const std::vector<Weight>& block_weights() const { return block_weight_; }

  std::uint32_t pin_count(HyperedgeID e, BlockID b) const {
    return pin_count_[static_cast<std::size_t>(e) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(b)];
  }
  bool in_connectivity_set(HyperedgeID e, BlockID b) const {
    return (connectivity_set(e)[static_cast<std::size_t>(b) >> 6] >> (b & 63)) & 1ULL;
  }
  std::uint32_t connectivity(HyperedgeID e) const {
    std::uint32_t c = 0;
    for (std::uint64_t word : connectivity_set(e)) c += static_cast<std::uint32_t>(std::popcount(word));
    return c;
  }
  /// Calls f(block) for every block of Λ(e) in ascending order.
  template <typename F>
  void for_each_connected_block(HyperedgeID e, F&& f) const {
    auto words = connectivity_set(e);
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        f(static_cast<BlockID>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
  }

  /// Moves v from `from` to `to` (Π[v] must equal `from`) and returns the
  /// attributed gain: +ω(e) for each hyperedge whose Φ(e,from) drops to 0,
  /// −ω(e) for each whose Φ(e,to) rises to 1. Thread-safe across vertices.
  Gain move(const Hypergraph& hg, VertexID v, BlockID from, BlockID to);

  /// Reassigns every vertex and rebuilds all derived data.
  void reset(const Hypergraph& hg, std::vector<BlockID> assignment);

  bool is_balanced() const;

  /// Recounts Φ, Λ and block weights from Π; throws std::logic_error on mismatch.
  void validate(const Hypergraph& hg) const;

 private:
  std::span<const std::uint64_t> connectivity_set(HyperedgeID e) const {
    return {connectivity_bits_.data() + static_cast<std::size_t>(e) * words_per_edge_, words_per_edge_};
  }
  void rebuild(const Hypergraph& hg);

  BlockID k_ = 0;
  Weight max_block_weight_ = 0;
  std::size_t words_per_edge_ = 0;
  std::vector<BlockID> assignment_;
  std::vector<Weight> block_weight_;
  std::vector<std::uint32_t> pin_count_;
  std::vector<std::uint64_t> connectivity_bits_;
  std::vector<std::uint8_t> edge_lock_;
};

/// Σ_e (λ(e)−1)·ω(e), recomputed from Π alone. Ignores the incremental state.
Gain connectivity_metric(const Hypergraph& hg, std::span<const BlockID> assignment);
Gain connectivity_metric(const Hypergraph& hg, const PartitionState& state);

std::vector<Weight> block_weights(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID k);

/// True iff every block weight is at most L_max.
bool check_balance(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID k, double epsilon);
bool check_balance(const Hypergraph& hg, const PartitionState& state, double epsilon);

/// max_i c(V_i) / ⌈c(V)/k⌉ − 1.
double imbalance(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID k);

}  // namespace detpart
