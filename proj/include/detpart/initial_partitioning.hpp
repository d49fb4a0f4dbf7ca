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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "detpart/config.hpp"
#include "detpart/hypergraph.hpp"

namespace detpart::initial {

enum class Algorithm : int {
  kRandom = 0,
  kBfs = 1,
  kGreedyHyperedge = 2,
  kLabelPropagation = 3,
};

inline constexpr int kNumAlgorithms = 4;

const char* algorithm_name(Algorithm algorithm);

/// Weight limits for the two sides of one bisection.
struct BisectionTarget {
  std::array<Weight, 2> max_weight{};
  std::array<double, 2> perfect_weight{};  // W·k_b/k

  bool fits(std::span<const Weight> side_weight) const {
    return side_weight[0] <= max_weight[0] && side_weight[1] <= max_weight[1];
  }
  double imbalance(std::span<const Weight> side_weight) const;
};

/// ε' = (1+ε)^(1/⌈log₂ k⌉) − 1; ε for k ≤ 2.
double adjusted_epsilon(double epsilon, BlockID k);

/// Side b receives k_b of the kk blocks; its cap is
/// min(⌊(1+ε')·⌈W·k_b/kk⌉⌋, k_b·L_max).
BisectionTarget bisection_target(Weight total_weight, BlockID k_left, BlockID k_right, double epsilon_prime,
                                 Weight max_block_weight);

struct BipartitionCandidate {
  std::vector<BlockID> assignment;
  Gain connectivity = 0;
  double imbalance = 0.0;
  bool balanced = false;
  std::uint64_t tag = 0;
};

/// Cut weight of a 2-way assignment, i.e. its connectivity.
Gain cut_weight(const Hypergraph& hg, std::span<const BlockID> assignment);

BipartitionCandidate evaluate(const Hypergraph& hg, std::vector<BlockID> assignment, const BisectionTarget& target,
                              std::uint64_t tag = 0);

/// One sequential flat bisection; a pure function of its arguments.
BipartitionCandidate flat_bipartition(const Hypergraph& hg, Algorithm algorithm, std::uint64_t seed,
                                      const BisectionTarget& target);

/// Sequential 2-way FM with rollback to the best prefix. Returns the number
/// of rounds that improved the (balanced, cut, imbalance) key.
int fm2way(const Hypergraph& hg, std::vector<BlockID>& assignment, const BisectionTarget& target, int max_rounds);

/// Lexicographic minimum over (not balanced, connectivity, imbalance, tag).
/// Throws std::invalid_argument on empty input.
const BipartitionCandidate& select_best(std::span<const BipartitionCandidate> candidates);

/// Best of algorithms × repetitions FM-polished candidates.
BipartitionCandidate portfolio_bisection(const Hypergraph& hg, const BisectionTarget& target,
                                         const PartitionConfig& cfg, std::uint64_t path_seed);

/// Induced sub-hypergraph on the vertices of `side`; hyperedges keeping
/// fewer than two pins are dropped. `local_to_global` lists the vertices.
Hypergraph extract_side(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID side,
                        std::vector<VertexID>& local_to_global);

/// k-way partition by recursive bisection. Throws InfeasibleError if a vertex
/// is heavier than `max_block_weight` or a bisection cannot meet its caps.
std::vector<BlockID> recursive_bipartition(const Hypergraph& hg, const PartitionConfig& cfg,
                                           Weight max_block_weight);

}  // namespace detpart::initial
