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

#include "detpart/partitioner.hpp"

#include <chrono>
#include <stdexcept>

#include "detpart/coarsening.hpp"
#include "detpart/initial_partitioning.hpp"
#include "detpart/parallel.hpp"
#include "detpart/partition_state.hpp"
#include "detpart/preprocessing.hpp"
#include "detpart/rng.hpp"

namespace detpart {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return seconds;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <typename T>
std::uint64_t fold(std::span<const T> values) {
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    h += mix64((static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(values[i]));
  }
  return h;
}

}  // namespace

std::uint64_t partition_checksum(std::span<const BlockID> assignment) { return fold(assignment); }

std::uint64_t mapping_checksum(std::span<const std::uint32_t> mapping) { return fold(mapping); }

std::vector<BlockID> project_partition(std::span<const BlockID> coarse, std::span<const VertexID> vertex_map) {
  std::vector<BlockID> fine(vertex_map.size());
#pragma omp parallel for schedule(static) if (parallel::worth_parallel(vertex_map.size()))
  for (std::size_t v = 0; v < vertex_map.size(); ++v) fine[v] = coarse[vertex_map[v]];
  return fine;
}

PartitionResult partition(const Hypergraph& hg, const PartitionConfig& cfg) {
  cfg.validate();
  if (static_cast<std::uint64_t>(cfg.k) > hg.num_vertices()) {
    throw std::invalid_argument("k=" + std::to_string(cfg.k) + " exceeds |V|=" + std::to_string(hg.num_vertices()));
  }
  const Weight l_max = compute_max_block_weight(hg.total_vertex_weight(), cfg.k, cfg.epsilon);
  if (hg.max_vertex_weight() > l_max) {
    throw InfeasibleError("vertex weight " + std::to_string(hg.max_vertex_weight()) + " exceeds L_max=" +
                          std::to_string(l_max));
  }
  parallel::ScopedThreadCount threads(cfg.thread_count);

  PartitionResult result;
  RunReport& report = result.report;
  report.config = cfg;
  report.max_block_weight = l_max;
  Stopwatch total;
  Stopwatch phase;

  const std::vector<ClusterID> communities = preprocessing::detect_communities(hg, cfg);
  report.phases.communities = mapping_checksum(communities);
  for (ClusterID c : communities) report.num_communities = std::max<std::size_t>(report.num_communities, c + 1);
  report.times.preprocessing = phase.lap();

  const coarsening::Hierarchy hierarchy = coarsening::coarsen_to_limit(hg, communities, cfg);
  report.level_sizes.push_back(hg.num_vertices());
  for (const auto& level : hierarchy.levels) {
    report.phases.clusterings.push_back(mapping_checksum(level.vertex_map));
    report.level_sizes.push_back(level.coarse.num_vertices());
  }
  report.times.coarsening = phase.lap();

  const Hypergraph& coarsest = hierarchy.coarsest(hg);
  std::vector<BlockID> assignment = initial::recursive_bipartition(coarsest, cfg, l_max);
  report.phases.initial_partition = partition_checksum(assignment);
  report.initial_connectivity = connectivity_metric(coarsest, assignment);
  report.times.initial_partitioning = phase.lap();

  const std::size_t depth = hierarchy.levels.size();
  PartitionState state(coarsest, cfg.k, l_max, std::move(assignment));
  auto refine = [&](const Hypergraph& level_hg, std::size_t level, LevelTrace& trace) {
    const std::uint64_t seed = hash_values({cfg.seed, 0x7ef1, static_cast<std::uint64_t>(level)});
    refinement::lp_refine(level_hg, state, cfg, seed, &trace.refinement);
    trace.refined_connectivity = connectivity_metric(level_hg, state);
    report.phases.refined.push_back(partition_checksum(state.assignment()));
  };

  {
    LevelTrace trace;
    trace.num_vertices = coarsest.num_vertices();
    trace.num_hyperedges = coarsest.num_hyperedges();
    trace.coarse_connectivity = trace.projected_connectivity = report.initial_connectivity;
    trace.coarse_block_weights = trace.projected_block_weights = state.block_weights();
    trace.coarse_imbalance = trace.projected_imbalance = imbalance(coarsest, state.assignment(), cfg.k);
    refine(coarsest, depth, trace);
    report.levels.push_back(std::move(trace));
  }
  for (std::size_t level = depth; level-- > 0;) {
    const Hypergraph& coarse_hg = hierarchy.levels[level].coarse;
    const Hypergraph& fine_hg = level == 0 ? hg : hierarchy.levels[level - 1].coarse;
    LevelTrace trace;
    trace.num_vertices = fine_hg.num_vertices();
    trace.num_hyperedges = fine_hg.num_hyperedges();
    trace.coarse_connectivity = connectivity_metric(coarse_hg, state);
    trace.coarse_block_weights = state.block_weights();
    trace.coarse_imbalance = imbalance(coarse_hg, state.assignment(), cfg.k);
    state = PartitionState(fine_hg, cfg.k, l_max, project_partition(state.assignment(), hierarchy.levels[level].vertex_map));
    trace.projected_connectivity = connectivity_metric(fine_hg, state);
    trace.projected_block_weights = state.block_weights();
    trace.projected_imbalance = imbalance(fine_hg, state.assignment(), cfg.k);
    refine(fine_hg, level, trace);
    report.levels.push_back(std::move(trace));
  }
  report.times.refinement = phase.lap();

  result.assignment = state.assignment();
  report.connectivity = connectivity_metric(hg, result.assignment);
  report.block_weights = block_weights(hg, result.assignment, cfg.k);
  report.imbalance = imbalance(hg, result.assignment, cfg.k);
  report.balanced = check_balance(hg, result.assignment, cfg.k, cfg.epsilon);
  report.checksum = partition_checksum(result.assignment);
  report.times.total = total.lap();
  return result;
}

DeterminismReport verify_determinism(const Hypergraph& hg, const PartitionConfig& cfg,
                                     std::span<const int> thread_counts) {
  if (thread_counts.size() < 2) throw std::invalid_argument("determinism check needs at least two thread counts");
  DeterminismReport out;
  std::vector<PartitionResult> runs;
  for (int threads : thread_counts) {
    PartitionConfig run_cfg = cfg;
    run_cfg.thread_count = threads;
    runs.push_back(partition(hg, run_cfg));
    out.thread_counts.push_back(threads);
    out.checksums.push_back(runs.back().report.checksum);
    out.connectivity.push_back(runs.back().report.connectivity);
  }

  const PhaseChecksums& ref = runs.front().report.phases;
  for (std::size_t r = 1; r < runs.size() && out.passed; ++r) {
    const PhaseChecksums& other = runs[r].report.phases;
    auto fail = [&](const char* phase, int level) {
      out.passed = false;
      out.first_differing_phase = phase;
      out.differing_level = level;
    };
    if (other.communities != ref.communities) {
      fail("preprocessing", -1);
      break;
    }
    if (other.clusterings != ref.clusterings) {
      int level = 0;
      while (static_cast<std::size_t>(level) < std::min(ref.clusterings.size(), other.clusterings.size()) &&
             ref.clusterings[static_cast<std::size_t>(level)] == other.clusterings[static_cast<std::size_t>(level)]) {
        ++level;
      }
      fail("coarsening", level);
      break;
    }
    if (other.initial_partition != ref.initial_partition) {
      fail("initial_partitioning", -1);
      break;
    }
    if (other.refined != ref.refined) {
      int level = 0;
      while (static_cast<std::size_t>(level) < std::min(ref.refined.size(), other.refined.size()) &&
             ref.refined[static_cast<std::size_t>(level)] == other.refined[static_cast<std::size_t>(level)]) {
        ++level;
      }
      fail("refinement", level);
      break;
    }
    if (runs[r].assignment != runs.front().assignment) fail("output", -1);
  }
  return out;
}

}  // namespace detpart
