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

#include "detpart/coarsening.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "detpart/parallel.hpp"
#include "detpart/partition_state.hpp"
#include "detpart/primitives.hpp"
#include "detpart/rng.hpp"

namespace detpart::coarsening {

namespace {

constexpr ClusterID kNoProposal = std::numeric_limits<ClusterID>::max();

}  // namespace

VertexID contraction_limit(const PartitionConfig& cfg) {
  return static_cast<VertexID>(cfg.contraction_limit_factor) * static_cast<VertexID>(cfg.k);
}

Weight max_cluster_weight(const Hypergraph& hg, const PartitionConfig& cfg) {
  const Weight l_max = compute_max_block_weight(hg.total_vertex_weight(), cfg.k, cfg.epsilon);
  const Weight by_limit = hg.total_vertex_weight() / static_cast<Weight>(contraction_limit(cfg));
  return std::max<Weight>(1, std::min(l_max, by_limit));
}

std::optional<ClusterID> heavy_edge_rating(const Hypergraph& hg, const Clustering& clustering,
                                           std::span<const ClusterID> communities, VertexID u,
                                           Weight max_cluster_weight, std::uint64_t seed,
                                           std::uint32_t max_rated_hyperedge_size, RatingScratch& scratch) {
  auto& rating = scratch.rating;
  auto& touched = scratch.touched;
  touched.clear();
  for (HyperedgeID e : hg.incident_nets(u)) {
    const std::size_t size = hg.edge_size(e);
    if (size < 2 || size > max_rated_hyperedge_size) continue;
    const double score = static_cast<double>(hg.hyperedge_weight(e)) / static_cast<double>(size - 1);
    for (VertexID v : hg.pins(e)) {
      if (v == u || communities[v] != communities[u]) continue;
      const ClusterID c = clustering.cluster_of[v];
      if (rating[c] == 0.0) touched.push_back(c);
      rating[c] += score;
    }
  }

  const Weight own = hg.vertex_weight(u);
  double best = 0.0;
  auto& ties = scratch.ties;
  ties.clear();
  for (ClusterID c : touched) {
    const double r = rating[c];
    rating[c] = 0.0;
    if (c == clustering.cluster_of[u] || clustering.cluster_weight[c] + own > max_cluster_weight) continue;
    if (r > best) {
      best = r;
      ties.clear();
      ties.push_back(c);
    } else if (r == best) {
      ties.push_back(c);
    }
  }
  if (ties.empty()) return std::nullopt;
  std::sort(ties.begin(), ties.end());
  return ties[seeded_tiebreak(seed, u, ties.size())];
}

std::vector<VertexID> approve_joins(std::span<const Join> joins, std::span<const Weight> cluster_weight,
                                    std::span<const Weight> opportunistic_weight, Weight max_cluster_weight) {
  std::vector<VertexID> approved;
  std::vector<Join> contested;
  for (const Join& join : joins) {
    if (opportunistic_weight[join.target] <= max_cluster_weight) {
      approved.push_back(join.vertex);
    } else {
      contested.push_back(join);
    }
  }
  std::sort(contested.begin(), contested.end(), [](const Join& a, const Join& b) {
    if (a.target != b.target) return a.target < b.target;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.vertex < b.vertex;
  });
  for (std::size_t i = 0; i < contested.size();) {
    const ClusterID target = contested[i].target;
    Weight weight = cluster_weight[target];
    bool full = false;
    for (; i < contested.size() && contested[i].target == target; ++i) {
      if (full || weight + contested[i].weight > max_cluster_weight) {
        full = true;
        continue;
      }
      weight += contested[i].weight;
      approved.push_back(contested[i].vertex);
    }
  }
  return approved;
}

Clustering coarsening_pass(const Hypergraph& hg, std::span<const ClusterID> communities, const PartitionConfig& cfg,
                           Weight max_cluster_weight, std::uint64_t seed) {
  const VertexID n = hg.num_vertices();
  Clustering clustering = Clustering::singletons(hg);
  std::vector<VertexID> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 0u);
  const SubRoundPartition split = split_sub_rounds(vertices, seed, static_cast<std::size_t>(cfg.coarsening_sub_rounds),
                                                   cfg.shuffle_chunk_count);

  std::vector<ClusterID> proposal(n, kNoProposal);
  std::vector<Weight> opportunistic(clustering.cluster_weight);
  std::vector<RatingScratch> scratch(static_cast<std::size_t>(parallel::max_threads()));
  std::vector<Join> joins;

  for (std::size_t r = 0; r < split.num_sub_rounds(); ++r) {
    auto slice = split.sub_round(r);
#pragma omp parallel if (parallel::worth_parallel(slice.size()))
    {
      auto& local = scratch[static_cast<std::size_t>(parallel::thread_id())];
      if (local.rating.size() < n) local.rating.assign(n, 0.0);
#pragma omp for schedule(dynamic, 64)
      for (std::size_t i = 0; i < slice.size(); ++i) {
        const VertexID u = slice[i];
        if (clustering.cluster_of[u] != u || clustering.cluster_weight[u] != hg.vertex_weight(u)) continue;
        const auto target = heavy_edge_rating(hg, clustering, communities, u, max_cluster_weight, seed,
                                              cfg.max_rated_hyperedge_size, local);
        if (!target) continue;
        proposal[u] = *target;
        parallel::fetch_add(opportunistic[*target], hg.vertex_weight(u));
      }
    }

    joins.clear();
    for (VertexID u : slice) {
      if (proposal[u] != kNoProposal) joins.push_back({proposal[u], hg.vertex_weight(u), u});
    }
    const std::vector<VertexID> approved = approve_joins(joins, clustering.cluster_weight, opportunistic,
                                                         max_cluster_weight);

#pragma omp parallel for schedule(static) if (parallel::worth_parallel(approved.size()))
    for (std::size_t i = 0; i < approved.size(); ++i) {
      const VertexID u = approved[i];
      const ClusterID target = proposal[u];
      clustering.cluster_of[u] = target;
      parallel::fetch_add(clustering.cluster_weight[target], hg.vertex_weight(u));
      parallel::fetch_add(clustering.cluster_weight[u], -hg.vertex_weight(u));
    }
    for (VertexID u : slice) proposal[u] = kNoProposal;
    opportunistic = clustering.cluster_weight;
  }
  return clustering;
}

std::uint64_t pin_set_hash(std::span<const VertexID> pins) {
  std::uint64_t h = 0;
  for (VertexID v : pins) h += mix64(static_cast<std::uint64_t>(v) + 1);
  return h;
}

ContractionResult contract_hypergraph(const Hypergraph& hg, std::span<const ClusterID> cluster_of) {
  const VertexID n = hg.num_vertices();
  const HyperedgeID m = hg.num_hyperedges();
  ContractionResult result;

  std::vector<VertexID> used(n, 0);
  for (VertexID v = 0; v < n; ++v) used[cluster_of[v]] = 1;
  const std::vector<VertexID> remap = prefix_sum(std::span<const VertexID>(used));
  const VertexID num_coarse = n == 0 ? 0 : remap[n - 1] + used[n - 1];

  result.vertex_map.resize(n);
  std::vector<Weight> coarse_vertex_weight(num_coarse, 0);
#pragma omp parallel for schedule(static) if (parallel::worth_parallel(n))
  for (VertexID v = 0; v < n; ++v) {
    const VertexID c = remap[cluster_of[v]];
    result.vertex_map[v] = c;
    parallel::fetch_add(coarse_vertex_weight[c], hg.vertex_weight(v));
  }

  // remapped, de-duplicated pin lists in first-occurrence order
  const bool par = parallel::worth_parallel(hg.num_pins());
  const std::size_t threads = static_cast<std::size_t>(parallel::max_threads());
  std::vector<std::vector<std::uint32_t>> stamps(threads);
  std::vector<PinIndex> fine_size(m);
#pragma omp parallel if (par)
  {
    auto& stamp = stamps[static_cast<std::size_t>(parallel::thread_id())];
    stamp.assign(num_coarse, 0);
#pragma omp for schedule(dynamic, 256)
    for (HyperedgeID e = 0; e < m; ++e) {
      PinIndex size = 0;
      for (VertexID v : hg.pins(e)) {
        const VertexID c = result.vertex_map[v];
        if (stamp[c] == e + 1) continue;
        stamp[c] = e + 1;
        ++size;
      }
      fine_size[e] = size;
    }
  }
  const std::vector<PinIndex> offsets = prefix_sum(std::span<const PinIndex>(fine_size));
  std::vector<VertexID> remapped(m == 0 ? 0 : offsets[m - 1] + fine_size[m - 1]);
  std::vector<std::uint64_t> hash(m, 0);
#pragma omp parallel if (par)
  {
    auto& stamp = stamps[static_cast<std::size_t>(parallel::thread_id())];
    std::fill(stamp.begin(), stamp.end(), 0u);
#pragma omp for schedule(dynamic, 256)
    for (HyperedgeID e = 0; e < m; ++e) {
      PinIndex pos = offsets[e];
      for (VertexID v : hg.pins(e)) {
        const VertexID c = result.vertex_map[v];
        if (stamp[c] == e + 1) continue;
        stamp[c] = e + 1;
        remapped[pos++] = c;
      }
      hash[e] = pin_set_hash({remapped.data() + offsets[e], fine_size[e]});
    }
  }
  auto coarse_pins = [&](HyperedgeID e) { return std::span<const VertexID>(remapped.data() + offsets[e], fine_size[e]); };

  std::vector<HyperedgeID> alive;
  alive.reserve(m);
  for (HyperedgeID e = 0; e < m; ++e) {
    if (fine_size[e] > 1) alive.push_back(e);
  }
  auto buckets = counting_sort(std::span<const HyperedgeID>(alive), [&](HyperedgeID e) { return hash[e] >> 56; },
                               std::size_t{256});

  std::vector<HyperedgeID> representative(m, kRemovedHyperedge);
  std::vector<Weight> class_weight(m, 0);
#pragma omp parallel if (par)
  {
    auto& stamp = stamps[static_cast<std::size_t>(parallel::thread_id())];
    std::fill(stamp.begin(), stamp.end(), 0u);
#pragma omp for schedule(dynamic, 1)
    for (std::size_t b = 0; b < 256; ++b) {
      auto first = buckets.sorted.begin() + static_cast<std::ptrdiff_t>(buckets.offsets[b]);
      auto last = buckets.sorted.begin() + static_cast<std::ptrdiff_t>(buckets.offsets[b + 1]);
      std::sort(first, last, [&](HyperedgeID a, HyperedgeID c) {
        if (hash[a] != hash[c]) return hash[a] < hash[c];
        if (fine_size[a] != fine_size[c]) return fine_size[a] < fine_size[c];
        return a < c;
      });
      for (auto run = first; run != last;) {
        auto run_end = run;
        while (run_end != last && hash[*run_end] == hash[*run] && fine_size[*run_end] == fine_size[*run]) ++run_end;
        for (auto it = run; it != run_end; ++it) {
          const HyperedgeID rep = *it;
          if (representative[rep] != kRemovedHyperedge) continue;
          representative[rep] = rep;
          class_weight[rep] = hg.hyperedge_weight(rep);
          for (VertexID c : coarse_pins(rep)) stamp[c] = rep + 1;
          for (auto other = it + 1; other != run_end; ++other) {
            if (representative[*other] != kRemovedHyperedge) continue;
            auto pins = coarse_pins(*other);
            if (std::all_of(pins.begin(), pins.end(), [&](VertexID c) { return stamp[c] == rep + 1; })) {
              representative[*other] = rep;
              class_weight[rep] += hg.hyperedge_weight(*other);
            }
          }
        }
        run = run_end;
      }
    }
  }

  std::vector<HyperedgeID> is_rep(m, 0);
  for (HyperedgeID e = 0; e < m; ++e) is_rep[e] = representative[e] == e ? 1 : 0;
  const std::vector<HyperedgeID> coarse_id = prefix_sum(std::span<const HyperedgeID>(is_rep));
  const HyperedgeID num_coarse_edges = m == 0 ? 0 : coarse_id[m - 1] + is_rep[m - 1];

  result.hyperedge_map.resize(m);
  std::vector<PinIndex> coarse_size(num_coarse_edges);
  std::vector<Weight> coarse_edge_weight(num_coarse_edges);
  for (HyperedgeID e = 0; e < m; ++e) {
    const HyperedgeID rep = representative[e];
    result.hyperedge_map[e] = rep == kRemovedHyperedge ? kRemovedHyperedge : coarse_id[rep];
    if (rep == e) {
      coarse_size[coarse_id[e]] = fine_size[e];
      coarse_edge_weight[coarse_id[e]] = class_weight[e];
    }
  }
  std::vector<PinIndex> coarse_offsets = prefix_sum(std::span<const PinIndex>(coarse_size));
  coarse_offsets.push_back(num_coarse_edges == 0 ? 0 : coarse_offsets.back() + coarse_size.back());
  std::vector<VertexID> pins(coarse_offsets.back());
#pragma omp parallel for schedule(dynamic, 256) if (par)
  for (HyperedgeID e = 0; e < m; ++e) {
    if (representative[e] != e) continue;
    auto src = coarse_pins(e);
    std::copy(src.begin(), src.end(), pins.begin() + static_cast<std::ptrdiff_t>(coarse_offsets[coarse_id[e]]));
  }

  result.coarse = Hypergraph(num_coarse, std::move(coarse_offsets), std::move(pins), std::move(coarse_edge_weight),
                             std::move(coarse_vertex_weight));
  return result;
}

Hierarchy coarsen_to_limit(const Hypergraph& hg, std::span<const ClusterID> communities, const PartitionConfig& cfg) {
  Hierarchy hierarchy;
  hierarchy.max_cluster_weight = max_cluster_weight(hg, cfg);
  const VertexID limit = contraction_limit(cfg);
  std::vector<ClusterID> current_communities(communities.begin(), communities.end());

  for (std::uint64_t level = 0;; ++level) {
    const Hypergraph& current = hierarchy.coarsest(hg);
    const VertexID n = current.num_vertices();
    if (n <= limit) break;
    const std::uint64_t seed = hash_values({cfg.seed, 0xc0a5, level});
    const Clustering clustering =
        coarsening_pass(current, current_communities, cfg, hierarchy.max_cluster_weight, seed);
    ContractionResult contracted = contract_hypergraph(current, clustering.cluster_of);
    const VertexID coarse_n = contracted.coarse.num_vertices();
    if (coarse_n == n) break;

    std::vector<ClusterID> coarse_communities(coarse_n);
    for (VertexID v = 0; v < n; ++v) coarse_communities[contracted.vertex_map[v]] = current_communities[v];
    hierarchy.levels.push_back(std::move(contracted));
    hierarchy.communities.push_back(coarse_communities);
    current_communities = std::move(coarse_communities);
    if (static_cast<double>(n - coarse_n) < cfg.min_coarsening_reduction * static_cast<double>(n)) break;
  }
  return hierarchy;
}

}  // namespace detpart::coarsening
