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
#include <stdexcept>
#include <string>

#include "detpart/types.hpp"

namespace detpart {

// Edge weighting of the star expansion used for community detection.
enum class BipartiteWeighting {
  kAuto,            // degree-scaled when median hyperedge size >= threshold
  kUniform,         // w'(v,e) = ω(e)
  kDegreeScaled,    // w'(v,e) = ω(e)·d(v)/|e|
};

struct PartitionConfig {
  BlockID k = 2;
  double epsilon = 0.03;
  std::uint64_t seed = 0;
  int thread_count = 1;

  // preprocessing
  int preprocessing_sub_rounds = 16;
  int preprocessing_rounds = 5;
  int louvain_max_levels = 32;
  BipartiteWeighting bipartite_weighting = BipartiteWeighting::kAuto;
  std::uint32_t degree_scaled_median_edge_size = 28;

  // coarsening
  int coarsening_sub_rounds = 3;
  int contraction_limit_factor = 160;
  std::uint32_t max_rated_hyperedge_size = 1000;
  double min_coarsening_reduction = 0.01;

  // initial partitioning
  int ip_repetitions = 20;
  int ip_algorithms = 4;
  int fm_rounds = 3;

  // refinement
  int refinement_sub_rounds = 1;
  int refinement_rounds_per_level = 5;
  int max_refinement_sub_rounds = 16;
  std::size_t swap_sequential_threshold = 2000;

  // primitives
  std::size_t shuffle_chunk_count = 256;

  // Test hook: applies Louvain volume updates immediately and in thread
  // arrival order. Breaks determinism on purpose.
  bool inject_unordered_volume_updates = false;

  void validate() const {
    auto require = [](bool ok, const char* what) {
      if (!ok) throw std::invalid_argument(std::string("invalid config: ") + what);
    };
    require(k >= 1, "k must be >= 1");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    require(thread_count >= 1, "thread count must be >= 1");
    require(preprocessing_sub_rounds >= 1 && preprocessing_sub_rounds <= 256,
            "preprocessing sub-rounds must lie in [1, 256]");
    require(coarsening_sub_rounds >= 1 && coarsening_sub_rounds <= 256,
            "coarsening sub-rounds must lie in [1, 256]");
    require(refinement_sub_rounds >= 1 && refinement_sub_rounds <= 256,
            "refinement sub-rounds must lie in [1, 256]");
    require(max_refinement_sub_rounds >= refinement_sub_rounds && max_refinement_sub_rounds <= 256,
            "max refinement sub-rounds must lie in [refinement sub-rounds, 256]");
    require(preprocessing_rounds >= 1, "preprocessing rounds must be >= 1");
    require(refinement_rounds_per_level >= 1, "refinement rounds must be >= 1");
    require(louvain_max_levels >= 1, "louvain levels must be >= 1");
    require(contraction_limit_factor >= 1, "contraction limit factor must be >= 1");
    require(max_rated_hyperedge_size >= 2, "max rated hyperedge size must be >= 2");
    require(ip_repetitions >= 1, "initial partitioning repetitions must be >= 1");
    require(ip_algorithms >= 1 && ip_algorithms <= 4, "initial partitioning algorithms must lie in [1, 4]");
    require(fm_rounds >= 0, "fm rounds must be >= 0");
    require(swap_sequential_threshold >= 1, "swap threshold must be >= 1");
    require(shuffle_chunk_count >= 1, "shuffle chunk count must be >= 1");
  }
};

}  // namespace detpart
