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

#include "detpart/refinement.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <numeric>

#include "detpart/parallel.hpp"
#include "detpart/primitives.hpp"
#include "detpart/rng.hpp"

namespace detpart::refinement {

namespace {

constexpr std::size_t kTaskCutoff = 1 << 15;

struct PathState {
  std::size_t i;
  std::size_t j;

  bool operator==(const PathState&) const = default;
};

class PrefixSearch {
 public:
  PrefixSearch(std::span<const Weight> a, std::span<const Weight> b, Weight budget_s, Weight budget_t,
               std::size_t threshold, bool spawn_tasks)
      : a_(a),
        b_(b),
        n_(a.size() - 1),
        m_(b.size() - 1),
        budget_s_(budget_s),
        budget_t_(budget_t),
        threshold_(std::max<std::size_t>(threshold, 3)),
        spawn_tasks_(spawn_tasks) {}

  std::optional<PathState> search(PathState s0, PathState s1) const {
    // bounds of a[i] - b[j] over the segment
    if (a_[s1.i] - b_[s0.j] < -budget_s_ || a_[s0.i] - b_[s1.j] > budget_t_) return std::nullopt;
    const std::size_t di = s1.i - s0.i;
    const std::size_t dj = s1.j - s0.j;
    if (di + dj < threshold_) return walk_back(s0, s1);

    PathState mid;
    if (di >= dj) {
      mid.i = s0.i + di / 2;
      mid.j = std::min(m_, static_cast<std::size_t>(std::upper_bound(b_.begin(), b_.end(), a_[mid.i - 1]) - b_.begin()));
    } else {
      mid.j = s0.j + dj / 2;
      mid.i = exit_row(mid.j - 1);
    }

    if (spawn_tasks_ && di + dj >= kTaskCutoff) {
      std::optional<PathState> left;
      std::optional<PathState> right;
#pragma omp task shared(left) firstprivate(s0, mid)
      left = search(s0, mid);
      right = search(mid, s1);
#pragma omp taskwait
      return right ? right : left;
    }
    if (auto right = search(mid, s1)) return right;
    return search(s0, mid);
  }

 private:
  bool feasible(PathState s) const {
    const Weight diff = a_[s.i] - b_[s.j];
    return diff >= -budget_s_ && diff <= budget_t_;
  }

  // Row at which the traversal leaves column j (j < m).
  std::size_t exit_row(std::size_t j) const {
    return std::min(n_, static_cast<std::size_t>(std::lower_bound(a_.begin(), a_.end(), b_[j]) - a_.begin()));
  }

  PathState predecessor(PathState s) const {
    if (s.j == 0 || (s.i > 0 && a_[s.i - 1] >= b_[s.j - 1])) return {s.i - 1, s.j};
    return {s.i, s.j - 1};
  }

  std::optional<PathState> walk_back(PathState s0, PathState s1) const {
    PathState cur = s1;
    for (;;) {
      if (feasible(cur)) return cur;
      if (cur == s0) return std::nullopt;
      cur = predecessor(cur);
    }
  }

  std::span<const Weight> a_;
  std::span<const Weight> b_;
  std::size_t n_;
  std::size_t m_;
  Weight budget_s_;
  Weight budget_t_;
  std::size_t threshold_;
  bool spawn_tasks_;
};

bool claim(std::uint32_t& slot, std::uint32_t stamp) {
  std::atomic_ref<std::uint32_t> ref(slot);
  std::uint32_t seen = ref.load(std::memory_order_relaxed);
  while (seen != stamp) {
    if (ref.compare_exchange_weak(seen, stamp, std::memory_order_relaxed)) return true;
  }
  return false;
}

}  // namespace

std::optional<ProposedMove> compute_max_gain_move(const Hypergraph& hg, const PartitionState& state, VertexID v,
                                                  std::vector<Gain>& gains) {
  const BlockID from = state.block(v);
  Gain internal = 0;
  for (HyperedgeID e : hg.incident_nets(v)) {
    const Weight w = hg.hyperedge_weight(e);
    if (state.pin_count(e, from) > 1) internal += w;
    state.for_each_connected_block(e, [&](BlockID b) { gains[static_cast<std::size_t>(b)] += w; });
  }
  BlockID best = kInvalidBlock;
  for (BlockID b = 0; b < state.k(); ++b) {
    if (b != from && (best == kInvalidBlock || gains[static_cast<std::size_t>(b)] > gains[static_cast<std::size_t>(best)])) {
      best = b;
    }
  }
  const Gain best_gain = best == kInvalidBlock ? 0 : gains[static_cast<std::size_t>(best)] - internal;
  std::fill(gains.begin(), gains.end(), 0);
  if (best == kInvalidBlock || best_gain <= 0) return std::nullopt;
  return ProposedMove{v, from, best, best_gain};
}

Gain move_gain(const Hypergraph& hg, const PartitionState& state, VertexID v, BlockID t) {
  const BlockID s = state.block(v);
  Gain g = 0;
  for (HyperedgeID e : hg.incident_nets(v)) {
    if (state.pin_count(e, s) == 1) g += hg.hyperedge_weight(e);
    if (state.pin_count(e, t) == 0) g -= hg.hyperedge_weight(e);
  }
  return g;
}

std::vector<Weight> cumulative_weights(std::span<const Weight> weights) {
  std::vector<Weight> out(weights.size() + 1, 0);
  std::partial_sum(weights.begin(), weights.end(), out.begin() + 1);
  return out;
}

std::pair<std::size_t, std::size_t> longest_feasible_prefixes_sequential(std::span<const Weight> a,
                                                                         std::span<const Weight> b,
                                                                         Weight budget_s, Weight budget_t) {
  const std::size_t n = a.size() - 1;
  const std::size_t m = b.size() - 1;
  std::size_t i = 0;
  std::size_t j = 0;
  std::pair<std::size_t, std::size_t> best{0, 0};
  for (;;) {
    const Weight diff = a[i] - b[j];
    if (diff >= -budget_s && diff <= budget_t) best = {i, j};
    if ((diff < 0 && i < n) || (j == m && i < n)) {
      ++i;
    } else if (j < m) {
      ++j;
    } else {
      break;
    }
  }
  return best;
}

std::pair<std::size_t, std::size_t> longest_feasible_prefixes(std::span<const Weight> a, std::span<const Weight> b,
                                                              Weight budget_s, Weight budget_t,
                                                              std::size_t sequential_threshold) {
  const PathState start{0, 0};
  const PathState end{a.size() - 1, b.size() - 1};
  std::optional<PathState> found;
  if (parallel::worth_parallel(a.size() + b.size()) && !omp_in_parallel()) {
    const PrefixSearch search(a, b, budget_s, budget_t, sequential_threshold, true);
#pragma omp parallel
#pragma omp single
    found = search.search(start, end);
  } else {
    const PrefixSearch search(a, b, budget_s, budget_t, sequential_threshold, false);
    found = search.search(start, end);
  }
  // (0, 0) is always feasible for non-negative budgets
  return found ? std::make_pair(found->i, found->j) : std::make_pair(std::size_t{0}, std::size_t{0});
}

std::vector<ProposedMove> approve_swaps(const Hypergraph& hg, const PartitionState& state,
                                        std::span<const ProposedMove> moves, const PartitionConfig& cfg) {
  if (moves.empty()) return {};
  const auto k = static_cast<std::size_t>(state.k());
  auto buckets = counting_sort(
      moves, [&](const ProposedMove& mv) { return static_cast<std::size_t>(mv.from) * k + static_cast<std::size_t>(mv.to); },
      k * k);
  auto bucket = [&](std::size_t s, std::size_t t) {
    return std::span<const ProposedMove>(buckets.sorted).subspan(buckets.offsets[s * k + t],
                                                                 buckets.offsets[s * k + t + 1] - buckets.offsets[s * k + t]);
  };

  std::vector<Weight> share(k, 0);
  for (std::size_t t = 0; t < k; ++t) {
    Weight pairs_into = 0;
    for (std::size_t s = 0; s < k; ++s) pairs_into += (s != t && !bucket(s, t).empty()) ? 1 : 0;
    const Weight free = std::max<Weight>(0, state.max_block_weight() - state.block_weight(static_cast<BlockID>(t)));
    share[t] = pairs_into == 0 ? 0 : free / pairs_into;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = s + 1; t < k; ++t) {
      if (!bucket(s, t).empty() || !bucket(t, s).empty()) pairs.emplace_back(s, t);
    }
  }

  auto by_gain = [](const ProposedMove& x, const ProposedMove& y) {
    return x.gain != y.gain ? x.gain > y.gain : x.vertex < y.vertex;
  };
  std::vector<std::vector<ProposedMove>> approved(pairs.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel::worth_parallel(moves.size()))
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [s, t] = pairs[p];
    std::vector<ProposedMove> forward(bucket(s, t).begin(), bucket(s, t).end());
    std::vector<ProposedMove> backward(bucket(t, s).begin(), bucket(t, s).end());
    std::sort(forward.begin(), forward.end(), by_gain);
    std::sort(backward.begin(), backward.end(), by_gain);
    std::vector<Weight> wf(forward.size());
    std::vector<Weight> wb(backward.size());
    for (std::size_t x = 0; x < forward.size(); ++x) wf[x] = hg.vertex_weight(forward[x].vertex);
    for (std::size_t x = 0; x < backward.size(); ++x) wb[x] = hg.vertex_weight(backward[x].vertex);
    const auto a = cumulative_weights(wf);
    const auto b = cumulative_weights(wb);
    const auto [i, j] = longest_feasible_prefixes(a, b, share[s], share[t], cfg.swap_sequential_threshold);
    approved[p].assign(forward.begin(), forward.begin() + static_cast<std::ptrdiff_t>(i));
    approved[p].insert(approved[p].end(), backward.begin(), backward.begin() + static_cast<std::ptrdiff_t>(j));
  }

  std::vector<ProposedMove> out;
  for (auto& list : approved) out.insert(out.end(), list.begin(), list.end());
  return out;
}

Gain apply_moves(const Hypergraph& hg, PartitionState& state, std::span<const ProposedMove> moves) {
  Gain total = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total) if (parallel::worth_parallel(moves.size()))
  for (std::size_t x = 0; x < moves.size(); ++x) {
    total += perform_move(hg, state, moves[x].vertex, moves[x].from, moves[x].to);
  }
  return total;
}

SubRoundResult refine_sub_round(const Hypergraph& hg, PartitionState& state, std::span<const VertexID> vertices,
                                const PartitionConfig& cfg) {
  const auto k = static_cast<std::size_t>(state.k());
  std::vector<ProposedMove> slots(vertices.size());
#pragma omp parallel if (parallel::worth_parallel(vertices.size()))
  {
    std::vector<Gain> gains(k, 0);
#pragma omp for schedule(dynamic, 128)
    for (std::size_t x = 0; x < vertices.size(); ++x) {
      const auto mv = compute_max_gain_move(hg, state, vertices[x], gains);
      slots[x] = mv ? *mv : ProposedMove{vertices[x], kInvalidBlock, kInvalidBlock, 0};
    }
  }
  std::vector<ProposedMove> moves;
  for (const ProposedMove& mv : slots) {
    if (mv.to != kInvalidBlock) moves.push_back(mv);
  }

  SubRoundResult result;
  result.applied = approve_swaps(hg, state, moves, cfg);
  result.attributed = apply_moves(hg, state, result.applied);
  if (result.attributed < 0) {
    std::vector<ProposedMove> undo(result.applied.size());
    std::transform(result.applied.begin(), result.applied.end(), undo.begin(), [](const ProposedMove& mv) {
      return ProposedMove{mv.vertex, mv.to, mv.from, -mv.gain};
    });
    apply_moves(hg, state, undo);
    result.reverted = true;
  }
  return result;
}

Gain lp_refine(const Hypergraph& hg, PartitionState& state, const PartitionConfig& cfg, std::uint64_t seed,
               RefinementStats* stats) {
  const VertexID n = hg.num_vertices();
  RefinementStats local;
  std::vector<VertexID> active(n);
  std::iota(active.begin(), active.end(), 0u);
  std::vector<std::uint32_t> last_scanned(hg.num_hyperedges(), 0);
  std::vector<std::uint32_t> last_activated(n, 0);
  int sub_rounds = cfg.refinement_sub_rounds;

  for (int round = 0; round < cfg.refinement_rounds_per_level && !active.empty(); ++round) {
    ++local.rounds;
    const SubRoundPartition split = split_sub_rounds(active, hash_values({seed, static_cast<std::uint64_t>(round)}),
                                                     static_cast<std::size_t>(sub_rounds), cfg.shuffle_chunk_count);
    std::vector<VertexID> moved;
    for (std::size_t r = 0; r < split.num_sub_rounds(); ++r) {
      ++local.sub_rounds;
      SubRoundResult result = refine_sub_round(hg, state, split.sub_round(r), cfg);
      if (result.reverted) {
        ++local.reverts;
        sub_rounds = std::min(2 * sub_rounds, cfg.max_refinement_sub_rounds);
        continue;
      }
      local.improvement += result.attributed;
      local.applied_moves += result.applied.size();
      for (const ProposedMove& mv : result.applied) moved.push_back(mv.vertex);
    }
    if (moved.empty()) break;

    const auto stamp = static_cast<std::uint32_t>(round + 1);
    std::vector<std::vector<VertexID>> found(static_cast<std::size_t>(parallel::max_threads()));
#pragma omp parallel if (parallel::worth_parallel(moved.size()))
    {
      auto& mine = found[static_cast<std::size_t>(parallel::thread_id())];
#pragma omp for schedule(dynamic, 64)
      for (std::size_t x = 0; x < moved.size(); ++x) {
        for (HyperedgeID e : hg.incident_nets(moved[x])) {
          if (!claim(last_scanned[e], stamp)) continue;
          for (VertexID u : hg.pins(e)) {
            if (claim(last_activated[u], stamp)) mine.push_back(u);
          }
        }
      }
    }
    active.clear();
    for (auto& list : found) active.insert(active.end(), list.begin(), list.end());
    std::sort(active.begin(), active.end());
  }
  if (stats != nullptr) *stats = local;
  return local.improvement;
}

}  // namespace detpart::refinement
