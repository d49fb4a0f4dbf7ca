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
#include <span>
#include <string>
#include <vector>

#include "detpart/config.hpp"
#include "detpart/hypergraph.hpp"
#include "detpart/refinement.hpp"

namespace detpart {

struct PhaseTimes {
  double preprocessing = 0.0;
  double coarsening = 0.0;
  double initial_partitioning = 0.0;
  double refinement = 0.0;
  double total = 0.0;
};

/// One uncoarsening step, coarsest first.
struct LevelTrace {
  VertexID num_vertices = 0;
  HyperedgeID num_hyperedges = 0;
  Gain coarse_connectivity = 0;
  Gain projected_connectivity = 0;
  double coarse_imbalance = 0.0;
  double projected_imbalance = 0.0;
  std::vector<Weight> coarse_block_weights;
  std::vector<Weight> projected_block_weights;
  Gain refined_connectivity = 0;
  refinement::RefinementStats refinement;
};

/// Checksums of every intermediate result, in pipeline order.
struct PhaseChecksums {
  std::uint64_t communities = 0;
  std::vector<std::uint64_t> clusterings;  // one per coarsening level
  std::uint64_t initial_partition = 0;
  std::vector<std::uint64_t> refined;      // coarsest level first
};

struct RunReport {
  Gain connectivity = 0;
  double imbalance = 0.0;
  bool balanced = false;
  Weight max_block_weight = 0;
  std::vector<Weight> block_weights;
  std::uint64_t checksum = 0;
  PhaseTimes times;
  PartitionConfig config;
  std::size_t num_communities = 0;
  std::vector<VertexID> level_sizes;  // vertex counts, input first
  Gain initial_connectivity = 0;      // on the coarsest level, before refinement
  std::vector<LevelTrace> levels;
  PhaseChecksums phases;
};

struct PartitionResult {
  std::vector<BlockID> assignment;
  RunReport report;
};

/// Order-independent fold Σ mix64((index << 32) | value), wrapping.
std::uint64_t partition_checksum(std::span<const BlockID> assignment);
std::uint64_t mapping_checksum(std::span<const std::uint32_t> mapping);

std::vector<BlockID> project_partition(std::span<const BlockID> coarse, std::span<const VertexID> vertex_map);

/// Preprocessing, coarsening, initial partitioning and refinement on every
/// level. Throws InfeasibleError if some vertex is heavier than L_max and
/// std::invalid_argument for invalid configurations.
PartitionResult partition(const Hypergraph& hg, const PartitionConfig& cfg);

struct DeterminismReport {
  bool passed = true;
  std::vector<int> thread_counts;
  std::vector<std::uint64_t> checksums;
  std::vector<Gain> connectivity;
  std::string first_differing_phase;  // empty when passed
  int differing_level = -1;
};

/// Runs `partition` once per thread count and compares the results phase by
/// phase. Needs at least two thread counts.
DeterminismReport verify_determinism(const Hypergraph& hg, const PartitionConfig& cfg,
                                     std::span<const int> thread_counts);

}  // namespace detpart
