#!/usr/bin/env python3
# Copyright 2026 The detpart Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the bundled test hypergraphs (hMetis format).

Output is a pure function of the fixed seeds below, so re-running the script
reproduces the committed files byte for byte.
"""

import argparse
import pathlib
import random


def write_hmetis(path, num_vertices, nets, net_weights=None, vertex_weights=None):
    weighted_nets = net_weights is not None and any(w != 1 for w in net_weights)
    weighted_vertices = vertex_weights is not None and any(w != 1 for w in vertex_weights)
    fmt = (10 if weighted_vertices else 0) + (1 if weighted_nets else 0)
    lines = [f"{len(nets)} {num_vertices}" + (f" {fmt}" if fmt else "")]
    for e, pins in enumerate(nets):
        prefix = f"{net_weights[e]} " if weighted_nets else ""
        lines.append(prefix + " ".join(str(v + 1) for v in pins))
    if weighted_vertices:
        lines.extend(str(w) for w in vertex_weights)
    path.write_text("\n".join(lines) + "\n")
    return sum(len(p) for p in nets)


def random_net(rng, n, size):
    return rng.sample(range(n), min(size, n))


def power_law_size(rng, lo, hi, alpha=2.2):
    # inverse transform sampling of a truncated power law
    u = rng.random()
    a = 1.0 - alpha
    x = ((hi ** a - lo ** a) * u + lo ** a) ** (1.0 / a)
    return max(lo, min(hi, int(x)))


def tiny_random(rng):
    n = 30
    nets = [random_net(rng, n, rng.randint(2, 4)) for _ in range(40)]
    return n, nets, None, None


def grid(side):
    def build(rng):
        n = side * side
        nets = []
        for r in range(side):
            for c in range(side):
                pins = [r * side + c]
                if c + 1 < side:
                    pins.append(r * side + c + 1)
                if r + 1 < side:
                    pins.append((r + 1) * side + c)
                if len(pins) > 1:
                    nets.append(pins)
        return n, nets, None, None
    return build


def vlsi(cells, num_nets, spread):
    # cells placed on a line; nets connect cells within a local window
    def build(rng):
        nets = []
        for _ in range(num_nets):
            size = power_law_size(rng, 2, 60)
            center = rng.randrange(cells)
            window = max(size * 2, spread)
            lo = max(0, center - window)
            hi = min(cells, center + window)
            nets.append(rng.sample(range(lo, hi), min(size, hi - lo)))
        return cells, nets, None, None
    return build


def sat_primal(num_vars, num_clauses, k):
    def build(rng):
        nets = [random_net(rng, num_vars, k) for _ in range(num_clauses)]
        return num_vars, nets, None, None
    return build


def sat_dual(num_vars, num_clauses, k):
    def build(rng):
        occurrences = [[] for _ in range(num_vars)]
        for c in range(num_clauses):
            for v in random_net(rng, num_vars, k):
                occurrences[v].append(c)
        nets = [occ for occ in occurrences if occ]
        return num_clauses, nets, None, None
    return build


def sparse_matrix(rows, per_row, band):
    # row-net model of a banded matrix with random fill
    def build(rng):
        nets = []
        for r in range(rows):
            cols = {r}
            for _ in range(per_row):
                if rng.random() < 0.8:
                    cols.add(min(rows - 1, max(0, r + rng.randint(-band, band))))
                else:
                    cols.add(rng.randrange(rows))
            nets.append(sorted(cols))
        return rows, nets, None, None
    return build


def skewed_weights(rng):
    n = 1500
    nets = [random_net(rng, n, power_law_size(rng, 2, 30)) for _ in range(1800)]
    weights = [min(200, int(rng.paretovariate(1.3))) for _ in range(n)]
    total = sum(weights)
    cap = max(1, total // 64)
    weights = [min(w, cap) for w in weights]
    net_weights = [rng.randint(1, 20) for _ in nets]
    return n, nets, net_weights, weights


def large_edges(rng):
    n = 3000
    nets = [random_net(rng, n, rng.randint(2, 6)) for _ in range(3500)]
    for size in (1100, 1400, 2000, 1050):
        nets.append(random_net(rng, n, size))
    return n, nets, None, None


def disconnected(rng):
    nets = []
    n = 0
    for comp_size in (400, 300, 250, 50):
        for _ in range(int(comp_size * 1.3)):
            nets.append([n + v for v in random_net(rng, comp_size, rng.randint(2, 5))])
        n += comp_size
    n += 40  # isolated vertices
    return n, nets, None, None


def weighted_nets(rng):
    n = 2500
    nets = [random_net(rng, n, rng.randint(2, 8)) for _ in range(3000)]
    net_weights = [rng.randint(1, 100) for _ in nets]
    return n, nets, net_weights, None


def hubs(rng):
    n = 2000
    hub_ids = list(range(10))
    nets = []
    for _ in range(2500):
        pins = set(random_net(rng, n, rng.randint(2, 4)))
        if rng.random() < 0.5:
            pins.add(rng.choice(hub_ids))
        nets.append(sorted(pins))
    return n, nets, None, None


def duplicates(rng):
    n = 800
    base = [random_net(rng, n, rng.randint(2, 5)) for _ in range(500)]
    nets = []
    for pins in base:
        nets.append(pins)
        for _ in range(rng.randint(0, 3)):
            shuffled = pins[:]
            rng.shuffle(shuffled)
            nets.append(shuffled)
    for _ in range(100):
        nets.append([rng.randrange(n)])
    rng.shuffle(nets)
    return n, nets, None, None


def uniform_medium(rng):
    n = 10000
    nets = [random_net(rng, n, rng.randint(2, 6)) for _ in range(10000)]
    vertex_weights = [rng.randint(1, 4) for _ in range(n)]
    return n, nets, None, vertex_weights


INSTANCES = [
    ("tiny_random", tiny_random),
    ("grid_16", grid(16)),
    ("grid_64", grid(64)),
    ("vlsi_small", vlsi(2000, 2200, 40)),
    ("vlsi_large", vlsi(16000, 17500, 80)),
    ("sat_primal", sat_primal(500, 2100, 3)),
    ("sat_dual", sat_dual(700, 3000, 3)),
    ("spm_banded", sparse_matrix(3000, 5, 20)),
    ("skewed_weights", skewed_weights),
    ("large_edges", large_edges),
    ("disconnected", disconnected),
    ("weighted_nets", weighted_nets),
    ("hubs", hubs),
    ("duplicates", duplicates),
    ("uniform_medium", uniform_medium),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "tests" / "corpus")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for index, (name, build) in enumerate(INSTANCES):
        rng = random.Random(1000 + index)
        n, nets, net_weights, vertex_weights = build(rng)
        pins = write_hmetis(args.out / f"{name}.hgr", n, nets, net_weights, vertex_weights)
        print(f"{name:16s} |V|={n:6d} |E|={len(nets):6d} pins={pins:7d}")


if __name__ == "__main__":
    main()
