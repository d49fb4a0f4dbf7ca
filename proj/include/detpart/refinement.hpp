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

// Synchronous label propagation refinement. Moves are computed against a
// frozen partition, approved as balance-preserving swaps per block pair and
// applied concurrently; the attributed gains of the applied moves sum to the
// exact change of the connectivity metric.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "detpart/config.hpp"
#include "detpart/hypergraph.hpp"
#include "detpart/partition_state.hpp"

namespace detpart::refinement {

struct ProposedMove {
  VertexID vertex;
  BlockID from;
  BlockID to;
  Gain gain;

  friend bool operator==(const ProposedMove&, const ProposedMove&) = default;
};

/// Best target block for v. `gains` is k-sized scratch and is left zeroed.
/// Returns a move only for strictly positive gain; ties go to the smaller block.
std::optional<ProposedMove> compute_max_gain_move(const Hypergraph& hg, const PartitionState& state, VertexID v,
                                                  std::vector<Gain>& gains);

/// Gain of moving v to t computed directly from pin counts.
Gain move_gain(const Hypergraph& hg, const PartitionState& state, VertexID v, BlockID t);

inline Gain perform_move(const Hypergraph& hg, PartitionState& state, VertexID v, BlockID from, BlockID to) {
  return state.move(hg, v, from, to);
}

/// Prefix sums with a leading zero: out[i] = Σ weight[0:i].
std::vector<Weight> cumulative_weights(std::span<const Weight> weights);

/// (i, j) is feasible iff −budget_s ≤ a[i] − b[j] ≤ budget_t. Walks the
/// traversal from (0, 0): take the next move of the first sequence if the
/// difference is negative and it has moves left (or the second is
/// exhausted), else of the second; returns the last feasible pair visited.
/// `a` and `b` are cumulative weights with a leading zero.
std::pair<std::size_t, std::size_t> longest_feasible_prefixes_sequential(std::span<const Weight> a,
                                                                         std::span<const Weight> b,
                                                                         Weight budget_s, Weight budget_t);

/// Same result as the sequential traversal, found by recursive bisection of
/// the traversal path with binary searches. Segments shorter than
/// `sequential_threshold` are walked backwards from their end.
std::pair<std::size_t, std::size_t> longest_feasible_prefixes(std::span<const Weight> a, std::span<const Weight> b,
                                                              Weight budget_s, Weight budget_t,
                                                              std::size_t sequential_threshold = 2000);

/// Sorts each block pair's moves by (gain desc, vertex asc), splits the free
/// capacity of every block equally among the pairs moving into it and keeps
/// the longest feasible prefixes. Returns the approved moves grouped by pair.
std::vector<ProposedMove> approve_swaps(const Hypergraph& hg, const PartitionState& state,
                                        std::span<const ProposedMove> moves, const PartitionConfig& cfg);

/// Applies the moves concurrently and returns the sum of attributed gains.
Gain apply_moves(const Hypergraph& hg, PartitionState& state, std::span<const ProposedMove> moves);

struct SubRoundResult {
  Gain attributed = 0;  // before a possible revert
  bool reverted = false;
  std::vector<ProposedMove> applied;
};

/// Gain computation, swap approval and application for one sub-round.
/// A negative attributed total is reverted.
SubRoundResult refine_sub_round(const Hypergraph& hg, PartitionState& state, std::span<const VertexID> vertices,
                                const PartitionConfig& cfg);

struct RefinementStats {
  int rounds = 0;
  int sub_rounds = 0;
  int reverts = 0;
  std::size_t applied_moves = 0;
  Gain improvement = 0;
};

/// Up to refinement_rounds_per_level rounds; returns the connectivity
/// improvement, which is never negative.
Gain lp_refine(const Hypergraph& hg, PartitionState& state, const PartitionConfig& cfg, std::uint64_t seed,
               RefinementStats* stats = nullptr);

}  // namespace detpart::refinement
