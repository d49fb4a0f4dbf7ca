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

#include "detpart/initial_partitioning.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "detpart/parallel.hpp"
#include "detpart/partition_state.hpp"
#include "detpart/rng.hpp"

namespace detpart::initial {

namespace {

constexpr std::size_t kMaxFruitlessMoves = 50;
constexpr int kLabelPropagationRounds = 5;

// 2-way partition with pin counts and cached move gains, used by all
// sequential algorithms.
class TwoWay {
 public:
  TwoWay(const Hypergraph& hg, std::vector<BlockID> part)
      : hg_(hg), part_(std::move(part)), phi_(hg.num_hyperedges()), gain_(hg.num_vertices(), 0) {
    for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
      for (VertexID v : hg.pins(e)) ++phi_[e][static_cast<std::size_t>(part_[v])];
      if (phi_[e][0] > 0 && phi_[e][1] > 0) cut_ += hg.hyperedge_weight(e);
      for (VertexID v : hg.pins(e)) gain_[v] += contribution(e, part_[v]);
    }
    for (VertexID v = 0; v < hg.num_vertices(); ++v) weight_[static_cast<std::size_t>(part_[v])] += hg.vertex_weight(v);
  }

  BlockID block(VertexID v) const { return part_[v]; }
  const std::array<Weight, 2>& weights() const { return weight_; }
  Gain cut() const { return cut_; }
  std::vector<BlockID> release() { return std::move(part_); }

  // cut reduction if v switched sides
  Gain gain(VertexID v) const { return gain_[v]; }

  // Moves v to the other side and returns the cut reduction. `on_gain_change`
  // is called for every other pin whose gain may have changed.
  template <typename OnGainChange>
  Gain move(VertexID v, OnGainChange&& on_gain_change) {
    const auto s = static_cast<std::size_t>(part_[v]);
    const std::size_t t = 1 - s;
    const Gain g = gain_[v];
    for (HyperedgeID e : hg_.incident_nets(v)) {
      const std::array<std::uint32_t, 2> before = phi_[e];
      --phi_[e][s];
      ++phi_[e][t];
      // contributions only change when a count crosses 0, 1 or 2
      if (before[s] > 2 && before[t] > 1) continue;
      const Weight w = hg_.hyperedge_weight(e);
      for (VertexID u : hg_.pins(e)) {
        if (u == v) continue;
        const auto b = static_cast<std::size_t>(part_[u]);
        const Gain delta = w * ((phi_[e][b] == 1) - (before[b] == 1) - (phi_[e][1 - b] == 0) + (before[1 - b] == 0));
        if (delta == 0) continue;
        gain_[u] += delta;
        on_gain_change(u);
      }
    }
    part_[v] = static_cast<BlockID>(t);
    gain_[v] = -g;
    weight_[s] -= hg_.vertex_weight(v);
    weight_[t] += hg_.vertex_weight(v);
    cut_ -= g;
    return g;
  }
  Gain move(VertexID v) {
    return move(v, [](VertexID) {});
  }

 private:
  Gain contribution(HyperedgeID e, BlockID b) const {
    const auto s = static_cast<std::size_t>(b);
    Gain c = 0;
    if (phi_[e][s] == 1) c += hg_.hyperedge_weight(e);
    if (phi_[e][1 - s] == 0) c -= hg_.hyperedge_weight(e);
    return c;
  }

  const Hypergraph& hg_;
  std::vector<BlockID> part_;
  std::vector<std::array<std::uint32_t, 2>> phi_;
  std::vector<Gain> gain_;
  std::array<Weight, 2> weight_{};
  Gain cut_ = 0;
};

// Binary max-heap over vertices keyed by gain, smaller id first among equal
// gains. Keys are updated in place.
class GainHeap {
 public:
  explicit GainHeap(VertexID n) : pos_(n, kAbsent), key_(n, 0) {}

  bool empty() const { return heap_.empty(); }
  bool contains(VertexID v) const { return pos_[v] != kAbsent; }
  VertexID top() const { return heap_.front(); }
  Gain top_key() const { return key_[heap_.front()]; }

  void clear() {
    for (VertexID v : heap_) pos_[v] = kAbsent;
    heap_.clear();
  }

  void insert(VertexID v, Gain key) {
    key_[v] = key;
    pos_[v] = static_cast<std::uint32_t>(heap_.size());
    heap_.push_back(v);
    sift_up(pos_[v]);
  }

  void update(VertexID v, Gain key) {
    const Gain old = key_[v];
    key_[v] = key;
    if (key > old) {
      sift_up(pos_[v]);
    } else if (key < old) {
      sift_down(pos_[v]);
    }
  }

  void remove(VertexID v) {
    const std::uint32_t i = pos_[v];
    const VertexID last = heap_.back();
    heap_.pop_back();
    pos_[v] = kAbsent;
    if (last == v) return;
    heap_[i] = last;
    pos_[last] = i;
    sift_up(i);
    sift_down(pos_[last]);
  }

  void pop() { remove(heap_.front()); }

 private:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

  bool before(VertexID a, VertexID b) const { return key_[a] != key_[b] ? key_[a] > key_[b] : a < b; }

  void place(std::uint32_t i, VertexID v) {
    heap_[i] = v;
    pos_[v] = i;
  }

  void sift_up(std::uint32_t i) {
    const VertexID v = heap_[i];
    while (i > 0) {
      const std::uint32_t parent = (i - 1) / 2;
      if (!before(v, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, v);
  }

  void sift_down(std::uint32_t i) {
    const VertexID v = heap_[i];
    const auto size = static_cast<std::uint32_t>(heap_.size());
    for (;;) {
      std::uint32_t child = 2 * i + 1;
      if (child >= size) break;
      if (child + 1 < size && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], v)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, v);
  }

  std::vector<VertexID> heap_;
  std::vector<std::uint32_t> pos_;
  std::vector<Gain> key_;
};

std::vector<VertexID> shuffled_vertices(VertexID n, Rng& rng) {
  std::vector<VertexID> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (VertexID i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  return order;
}

class Grower {
 public:
  Grower(const Hypergraph& hg, const BisectionTarget& target)
      : hg_(hg), target_(target), state_(hg, std::vector<BlockID>(hg.num_vertices(), 1)) {}

  bool wants_more() const { return static_cast<double>(state_.weights()[0]) < target_.perfect_weight[0]; }
  bool can_take(VertexID v) const {
    return state_.block(v) == 1 && state_.weights()[0] + hg_.vertex_weight(v) <= target_.max_weight[0];
  }
  TwoWay& state() { return state_; }

 private:
  const Hypergraph& hg_;
  const BisectionTarget& target_;
  TwoWay state_;
};

// Same growth rule without gain bookkeeping.
class PlainGrower {
 public:
  PlainGrower(const Hypergraph& hg, const BisectionTarget& target)
      : hg_(hg), target_(target), part_(hg.num_vertices(), 1) {}

  bool wants_more() const { return static_cast<double>(weight0_) < target_.perfect_weight[0]; }
  bool can_take(VertexID v) const { return part_[v] == 1 && weight0_ + hg_.vertex_weight(v) <= target_.max_weight[0]; }
  void take(VertexID v) {
    part_[v] = 0;
    weight0_ += hg_.vertex_weight(v);
  }
  std::vector<BlockID> release() { return std::move(part_); }

 private:
  const Hypergraph& hg_;
  const BisectionTarget& target_;
  std::vector<BlockID> part_;
  Weight weight0_ = 0;
};

// Vertices in BFS order starting at `start`; returns the last one reached.
VertexID farthest_from(const Hypergraph& hg, VertexID start) {
  std::vector<char> seen(hg.num_vertices(), 0);
  std::deque<VertexID> queue{start};
  seen[start] = 1;
  VertexID last = start;
  while (!queue.empty()) {
    last = queue.front();
    queue.pop_front();
    for (HyperedgeID e : hg.incident_nets(last)) {
      for (VertexID u : hg.pins(e)) {
        if (!seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  return last;
}

std::vector<BlockID> grow_random(const Hypergraph& hg, Rng& rng, const BisectionTarget& target) {
  PlainGrower grower(hg, target);
  for (VertexID v : shuffled_vertices(hg.num_vertices(), rng)) {
    if (!grower.wants_more()) break;
    if (grower.can_take(v)) grower.take(v);
  }
  return grower.release();
}

std::vector<BlockID> grow_bfs(const Hypergraph& hg, Rng& rng, const BisectionTarget& target) {
  const VertexID n = hg.num_vertices();
  PlainGrower grower(hg, target);
  const std::vector<VertexID> restart = shuffled_vertices(n, rng);
  std::vector<char> seen(n, 0);
  std::deque<VertexID> queue;
  std::size_t next_restart = 0;
  if (n > 0) {
    const VertexID start = farthest_from(hg, restart[0]);
    queue.push_back(start);
    seen[start] = 1;
  }
  while (grower.wants_more()) {
    if (queue.empty()) {
      while (next_restart < n && seen[restart[next_restart]]) ++next_restart;
      if (next_restart == n) break;
      queue.push_back(restart[next_restart]);
      seen[restart[next_restart]] = 1;
    }
    const VertexID v = queue.front();
    queue.pop_front();
    if (grower.can_take(v)) grower.take(v);
    for (HyperedgeID e : hg.incident_nets(v)) {
      for (VertexID u : hg.pins(e)) {
        if (!seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  return grower.release();
}

std::vector<BlockID> grow_greedy(const Hypergraph& hg, Rng& rng, const BisectionTarget& target) {
  const VertexID n = hg.num_vertices();
  Grower grower(hg, target);
  TwoWay& state = grower.state();
  const std::vector<VertexID> restart = shuffled_vertices(n, rng);
  GainHeap queue(n);
  std::size_t next_restart = 0;

  auto on_change = [&](VertexID u) {
    if (queue.contains(u)) queue.update(u, state.gain(u));
  };
  auto take = [&](VertexID v) {
    if (queue.contains(v)) queue.remove(v);
    state.move(v, on_change);
    for (HyperedgeID e : hg.incident_nets(v)) {
      for (VertexID u : hg.pins(e)) {
        if (state.block(u) == 1 && !queue.contains(u)) queue.insert(u, state.gain(u));
      }
    }
  };

  while (grower.wants_more()) {
    if (queue.empty()) {
      while (next_restart < n && !grower.can_take(restart[next_restart])) ++next_restart;
      if (next_restart == n) break;
      take(restart[next_restart]);
      continue;
    }
    const VertexID v = queue.top();
    if (grower.can_take(v)) {
      take(v);
    } else {
      queue.pop();
    }
  }
  return state.release();
}

std::vector<BlockID> label_propagation(const Hypergraph& hg, Rng& rng, const BisectionTarget& target) {
  TwoWay state(hg, grow_random(hg, rng, target));
  const VertexID n = hg.num_vertices();
  for (int round = 0; round < kLabelPropagationRounds; ++round) {
    std::size_t moved = 0;
    for (VertexID v : shuffled_vertices(n, rng)) {
      const auto t = static_cast<std::size_t>(1 - state.block(v));
      if (state.weights()[t] + hg.vertex_weight(v) > target.max_weight[t]) continue;
      if (state.gain(v) > 0) {
        state.move(v);
        ++moved;
      }
    }
    if (moved == 0) break;
  }
  return state.release();
}

// Moves vertices out of an overloaded side, heaviest first, while they fit.
void fit_to_caps(const Hypergraph& hg, std::vector<BlockID>& assignment, const BisectionTarget& target) {
  std::array<Weight, 2> weight{};
  for (VertexID v = 0; v < hg.num_vertices(); ++v) weight[static_cast<std::size_t>(assignment[v])] += hg.vertex_weight(v);
  for (std::size_t s = 0; s < 2; ++s) {
    if (weight[s] <= target.max_weight[s]) continue;
    std::vector<VertexID> members;
    for (VertexID v = 0; v < hg.num_vertices(); ++v) {
      if (static_cast<std::size_t>(assignment[v]) == s) members.push_back(v);
    }
    std::stable_sort(members.begin(), members.end(),
                     [&](VertexID a, VertexID b) { return hg.vertex_weight(a) > hg.vertex_weight(b); });
    for (VertexID v : members) {
      if (weight[s] <= target.max_weight[s]) break;
      const Weight c = hg.vertex_weight(v);
      if (weight[1 - s] + c > target.max_weight[1 - s]) continue;
      assignment[v] = static_cast<BlockID>(1 - s);
      weight[s] -= c;
      weight[1 - s] += c;
    }
    if (weight[s] <= target.max_weight[s]) continue;
    // single moves are stuck; exchange a heavy vertex for a lighter one
    std::vector<VertexID> others;
    for (VertexID v = 0; v < hg.num_vertices(); ++v) {
      if (static_cast<std::size_t>(assignment[v]) != s) others.push_back(v);
    }
    std::stable_sort(others.begin(), others.end(),
                     [&](VertexID a, VertexID b) { return hg.vertex_weight(a) < hg.vertex_weight(b); });
    for (VertexID v : members) {
      if (weight[s] <= target.max_weight[s]) break;
      if (static_cast<std::size_t>(assignment[v]) != s) continue;
      for (VertexID u : others) {
        const Weight diff = hg.vertex_weight(v) - hg.vertex_weight(u);
        if (diff <= 0) break;
        if (static_cast<std::size_t>(assignment[u]) == s || weight[1 - s] + diff > target.max_weight[1 - s]) continue;
        assignment[v] = static_cast<BlockID>(1 - s);
        assignment[u] = static_cast<BlockID>(s);
        weight[s] -= diff;
        weight[1 - s] += diff;
        break;
      }
    }
  }
}

using CandidateKey = std::tuple<bool, Gain, double>;

CandidateKey key_of(const TwoWay& state, const BisectionTarget& target) {
  return {!target.fits(state.weights()), state.cut(), target.imbalance(state.weights())};
}

}  // namespace

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRandom:
      return "random";
    case Algorithm::kBfs:
      return "bfs";
    case Algorithm::kGreedyHyperedge:
      return "greedy_hyperedge";
    case Algorithm::kLabelPropagation:
      return "label_propagation";
  }
  return "unknown";
}

double BisectionTarget::imbalance(std::span<const Weight> side_weight) const {
  double worst = -1.0;
  for (std::size_t b = 0; b < 2; ++b) {
    if (perfect_weight[b] <= 0.0) continue;
    worst = std::max(worst, static_cast<double>(side_weight[b]) / perfect_weight[b] - 1.0);
  }
  return worst;
}

double adjusted_epsilon(double epsilon, BlockID k) {
  if (k <= 2) return epsilon;
  const int depth = std::bit_width(static_cast<std::uint32_t>(k - 1));
  return std::pow(1.0 + epsilon, 1.0 / depth) - 1.0;
}

BisectionTarget bisection_target(Weight total_weight, BlockID k_left, BlockID k_right, double epsilon_prime,
                                 Weight max_block_weight) {
  const BlockID kk = k_left + k_right;
  BisectionTarget target;
  const std::array<BlockID, 2> ks{k_left, k_right};
  for (std::size_t b = 0; b < 2; ++b) {
    const Weight relaxed = compute_max_block_weight(total_weight * ks[b], kk, epsilon_prime);
    target.max_weight[b] = std::min(relaxed, static_cast<Weight>(ks[b]) * max_block_weight);
    target.perfect_weight[b] = static_cast<double>(total_weight) * ks[b] / kk;
  }
  return target;
}

Gain cut_weight(const Hypergraph& hg, std::span<const BlockID> assignment) {
  Gain cut = 0;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    auto pins = hg.pins(e);
    const bool split = std::any_of(pins.begin(), pins.end(), [&](VertexID v) { return assignment[v] != assignment[pins[0]]; });
    if (split) cut += hg.hyperedge_weight(e);
  }
  return cut;
}

BipartitionCandidate evaluate(const Hypergraph& hg, std::vector<BlockID> assignment, const BisectionTarget& target,
                              std::uint64_t tag) {
  BipartitionCandidate candidate;
  std::array<Weight, 2> weight{};
  for (VertexID v = 0; v < hg.num_vertices(); ++v) weight[static_cast<std::size_t>(assignment[v])] += hg.vertex_weight(v);
  candidate.connectivity = cut_weight(hg, assignment);
  candidate.imbalance = target.imbalance(weight);
  candidate.balanced = target.fits(weight);
  candidate.tag = tag;
  candidate.assignment = std::move(assignment);
  return candidate;
}

namespace {

std::vector<BlockID> flat_assignment(const Hypergraph& hg, Algorithm algorithm, std::uint64_t seed,
                                     const BisectionTarget& target) {
  Rng rng(seed);
  std::vector<BlockID> assignment;
  switch (algorithm) {
    case Algorithm::kRandom:
      assignment = grow_random(hg, rng, target);
      break;
    case Algorithm::kBfs:
      assignment = grow_bfs(hg, rng, target);
      break;
    case Algorithm::kGreedyHyperedge:
      assignment = grow_greedy(hg, rng, target);
      break;
    case Algorithm::kLabelPropagation:
      assignment = label_propagation(hg, rng, target);
      break;
  }
  fit_to_caps(hg, assignment, target);
  return assignment;
}

}  // namespace

BipartitionCandidate flat_bipartition(const Hypergraph& hg, Algorithm algorithm, std::uint64_t seed,
                                      const BisectionTarget& target) {
  return evaluate(hg, flat_assignment(hg, algorithm, seed, target), target);
}

int fm2way(const Hypergraph& hg, std::vector<BlockID>& assignment, const BisectionTarget& target, int max_rounds) {
  const VertexID n = hg.num_vertices();
  TwoWay state(hg, std::move(assignment));
  std::array<GainHeap, 2> queue{GainHeap(n), GainHeap(n)};
  std::vector<VertexID> moves;
  int improved_rounds = 0;

  for (int round = 0; round < max_rounds; ++round) {
    for (std::size_t b = 0; b < 2; ++b) queue[b].clear();
    for (VertexID v = 0; v < n; ++v) queue[static_cast<std::size_t>(state.block(v))].insert(v, state.gain(v));

    CandidateKey best = key_of(state, target);
    std::size_t best_len = 0;
    std::size_t fruitless = 0;
    moves.clear();
    for (;;) {
      int chosen = -1;
      VertexID choice = 0;
      for (std::size_t b = 0; b < 2; ++b) {
        if (queue[b].empty()) continue;
        const VertexID top = queue[b].top();
        if (state.weights()[1 - b] + hg.vertex_weight(top) > target.max_weight[1 - b]) continue;
        const Gain g = queue[b].top_key();
        if (chosen < 0 || g > state.gain(choice) || (g == state.gain(choice) && top < choice)) {
          chosen = static_cast<int>(b);
          choice = top;
        }
      }
      if (chosen < 0) break;
      queue[static_cast<std::size_t>(chosen)].pop();
      moves.push_back(choice);
      state.move(choice, [&](VertexID u) {
        auto& q = queue[static_cast<std::size_t>(state.block(u))];
        if (q.contains(u)) q.update(u, state.gain(u));
      });
      const CandidateKey key = key_of(state, target);
      if (key < best) {
        best = key;
        best_len = moves.size();
        fruitless = 0;
      } else if (++fruitless >= kMaxFruitlessMoves) {
        break;
      }
    }
    while (moves.size() > best_len) {
      state.move(moves.back());
      moves.pop_back();
    }
    if (best_len == 0) break;
    ++improved_rounds;
  }
  assignment = state.release();
  return improved_rounds;
}

const BipartitionCandidate& select_best(std::span<const BipartitionCandidate> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_best needs at least one candidate");
  auto key = [](const BipartitionCandidate& c) { return std::make_tuple(!c.balanced, c.connectivity, c.imbalance, c.tag); };
  const BipartitionCandidate* best = &candidates[0];
  for (const BipartitionCandidate& c : candidates.subspan(1)) {
    if (key(c) < key(*best)) best = &c;
  }
  return *best;
}

BipartitionCandidate portfolio_bisection(const Hypergraph& hg, const BisectionTarget& target,
                                         const PartitionConfig& cfg, std::uint64_t path_seed) {
  const auto reps = static_cast<std::size_t>(cfg.ip_repetitions);
  const std::size_t total = static_cast<std::size_t>(cfg.ip_algorithms) * reps;
  std::vector<BipartitionCandidate> candidates(total);
#pragma omp parallel for schedule(dynamic, 1) if (parallel::max_threads() > 1)
  for (std::size_t i = 0; i < total; ++i) {
    const auto algorithm = static_cast<Algorithm>(i / reps);
    const std::uint64_t seed = hash_values({path_seed, i / reps, i % reps});
    std::vector<BlockID> assignment = flat_assignment(hg, algorithm, seed, target);
    fm2way(hg, assignment, target, cfg.fm_rounds);
    candidates[i] = evaluate(hg, std::move(assignment), target, i);
  }
  return select_best(candidates);
}

Hypergraph extract_side(const Hypergraph& hg, std::span<const BlockID> assignment, BlockID side,
                        std::vector<VertexID>& local_to_global) {
  constexpr VertexID kAbsent = std::numeric_limits<VertexID>::max();
  std::vector<VertexID> global_to_local(hg.num_vertices(), kAbsent);
  local_to_global.clear();
  std::vector<Weight> vertex_weight;
  for (VertexID v = 0; v < hg.num_vertices(); ++v) {
    if (assignment[v] != side) continue;
    global_to_local[v] = static_cast<VertexID>(local_to_global.size());
    local_to_global.push_back(v);
    vertex_weight.push_back(hg.vertex_weight(v));
  }
  std::vector<PinIndex> offsets{0};
  std::vector<VertexID> pins;
  std::vector<Weight> edge_weight;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    const std::size_t before = pins.size();
    for (VertexID v : hg.pins(e)) {
      if (global_to_local[v] != kAbsent) pins.push_back(global_to_local[v]);
    }
    if (pins.size() - before < 2) {
      pins.resize(before);
      continue;
    }
    offsets.push_back(pins.size());
    edge_weight.push_back(hg.hyperedge_weight(e));
  }
  return Hypergraph(static_cast<VertexID>(local_to_global.size()), std::move(offsets), std::move(pins),
                    std::move(edge_weight), std::move(vertex_weight));
}

namespace {

void bisect_recursively(const Hypergraph& hg, std::span<const VertexID> to_global, BlockID first_block, BlockID kk,
                        const PartitionConfig& cfg, Weight max_block_weight, double epsilon_prime,
                        std::vector<BlockID>& out) {
  const VertexID n = hg.num_vertices();
  if (kk == 1 || n == 0) {
    for (VertexID v = 0; v < n; ++v) out[to_global[v]] = first_block;
    return;
  }
  const BlockID k_left = (kk + 1) / 2;
  const BlockID k_right = kk / 2;
  const BisectionTarget target =
      bisection_target(hg.total_vertex_weight(), k_left, k_right, epsilon_prime, max_block_weight);
  const std::uint64_t path_seed = hash_values({cfg.seed, 0x1b15, static_cast<std::uint64_t>(first_block),
                                               static_cast<std::uint64_t>(kk)});
  const BipartitionCandidate best = portfolio_bisection(hg, target, cfg, path_seed);
  if (!best.balanced) {
    throw InfeasibleError("no bisection of " + std::to_string(n) + " vertices fits the caps " +
                          std::to_string(target.max_weight[0]) + "/" + std::to_string(target.max_weight[1]));
  }

  for (BlockID side = 0; side < 2; ++side) {
    std::vector<VertexID> local_to_global;
    const Hypergraph child = extract_side(hg, best.assignment, side, local_to_global);
    for (VertexID& v : local_to_global) v = to_global[v];
    bisect_recursively(child, local_to_global, side == 0 ? first_block : first_block + k_left,
                       side == 0 ? k_left : k_right, cfg, max_block_weight, epsilon_prime, out);
  }
}

}  // namespace

std::vector<BlockID> recursive_bipartition(const Hypergraph& hg, const PartitionConfig& cfg,
                                           Weight max_block_weight) {
  if (hg.max_vertex_weight() > max_block_weight) {
    throw InfeasibleError("vertex weight " + std::to_string(hg.max_vertex_weight()) + " exceeds L_max=" +
                          std::to_string(max_block_weight));
  }
  std::vector<BlockID> out(hg.num_vertices(), 0);
  std::vector<VertexID> identity(hg.num_vertices());
  std::iota(identity.begin(), identity.end(), 0u);
  bisect_recursively(hg, identity, 0, cfg.k, cfg, max_block_weight, adjusted_epsilon(cfg.epsilon, cfg.k), out);
  return out;
}

}  // namespace detpart::initial
