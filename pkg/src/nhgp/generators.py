"""Synthetic hypergraph instances for tests and benchmarks."""

from __future__ import annotations

import math
import random

from .hypergraph import Hypergraph


def random_hypergraph(n: int, m: int, seed: int = 0, max_net_size: int = 6,
                      max_net_weight: int = 1, max_vertex_weight: int = 1,
                      min_net_size: int = 2) -> Hypergraph:
    rng = random.Random(seed)
    nets = []
    for _ in range(m):
        size = rng.randint(min(min_net_size, n), min(max_net_size, n))
        nets.append(rng.sample(range(n), size))
    net_w = [rng.randint(1, max_net_weight) for _ in nets]
    vert_w = [rng.randint(1, max_vertex_weight) for _ in range(n)]
    return Hypergraph(n, nets, net_w, vert_w)


def vlsi_like(n: int = 12752, m: int = 14111, seed: int = 0, mean_size: float = 3.58,
              max_size: int = 42) -> Hypergraph:
    """Netlist-like instance: vertices on a grid, nets join nearby vertices.

    Net sizes follow 2 + geometric(mean_size - 2) capped at ``max_size``;
    the defaults approximate the ibm01 circuit (12752 / 14111 / ~50k pins).
    """
    rng = random.Random(seed)
    width = max(1, int(math.isqrt(n)))
    height = -(-n // width)
    p = 1.0 / (mean_size - 1.0)
    nets = []
    covered = [False] * n
    for _ in range(m):
        size = 2
        while size < max_size and rng.random() > p:
            size += 1
        size = min(size, n)
        src = rng.randrange(n)
        sx, sy = src % width, src // width
        radius = 1 + int(math.sqrt(size))
        pins = {src}
        tries = 0
        while len(pins) < size and tries < 20 * size:
            tries += 1
            x = sx + rng.randint(-radius, radius)
            y = sy + rng.randint(-radius, radius)
            if 0 <= x < width and 0 <= y < height:
                v = y * width + x
                if v < n:
                    pins.add(v)
        if len(pins) < 2:
            pins.add((src + 1) % n)
        net = sorted(pins)
        for v in net:
            covered[v] = True
        nets.append(net)
    # every vertex gets at least one net
    for v in range(n):
        if not covered[v]:
            net = nets[rng.randrange(m)]
            if v not in net:
                net.append(v)
    return Hypergraph(n, nets)


def chain(n: int) -> Hypergraph:
    return Hypergraph(n, [[i, i + 1] for i in range(n - 1)])
