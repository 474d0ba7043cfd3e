"""Portfolio of randomized bipartitioners for the coarsest hypergraph."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .hypergraph import Hypergraph
from .partition import weight_cap
from .pq import AddressablePQ

SCORES = ("fm", "max_net", "max_pin")
GROWTHS = ("global", "sequential", "round_robin")
MAX_LP_ROUNDS = 100


@dataclass
class PortfolioConfig:
    runs_per_algorithm: int = 20
    tau: int = 5
    epsilon_prime: float = 0.03
    max_weights: tuple[float, float] = (math.inf, math.inf)
    perfect_weights: tuple[int, int] = (1, 1)
    seed: int = 0

    def __post_init__(self):
        if self.runs_per_algorithm < 1:
            raise ValueError("runs_per_algorithm must be at least 1")
        if self.tau < 0:
            raise ValueError("tau must be non-negative")

    @property
    def caps(self) -> tuple[float, float]:
        return tuple(weight_cap(x) if x != math.inf else math.inf for x in self.max_weights)

    @classmethod
    def balanced(cls, total_weight: int, epsilon: float, **kw) -> "PortfolioConfig":
        """Symmetric targets (1+eps)*ceil(c(V)/2) for a plain bisection."""
        half = math.ceil(total_weight / 2)
        return cls(epsilon_prime=epsilon, max_weights=((1 + epsilon) * half,) * 2,
                   perfect_weights=(half, half), **kw)


@dataclass
class Candidate:
    assignment: list[int]
    cut: int
    imbalance: float
    balanced: bool
    algorithm: str = ""
    block_weights: tuple[int, int] = (0, 0)


def evaluate(hg: Hypergraph, assignment: Sequence[int], config: PortfolioConfig,
             algorithm: str = "") -> Candidate:
    w = [0, 0]
    for v in hg.vertices():
        w[assignment[v]] += hg.v_weight[v]
    cut = 0
    for e in hg.nets():
        pins = hg.pins(e)
        b = assignment[pins[0]]
        for p in pins:
            if assignment[p] != b:
                cut += hg.e_weight[e]
                break
    perfect = config.perfect_weights
    imbalance = max(w[0] / max(perfect[0], 1), w[1] / max(perfect[1], 1)) - 1.0
    caps = config.caps
    balanced = w[0] <= caps[0] and w[1] <= caps[1]
    return Candidate(list(assignment), cut, imbalance, balanced, algorithm, (w[0], w[1]))


def _fill_rest(hg: Hypergraph, part: list[int], weights: list[int], caps, rng=None) -> None:
    """Assign leftover vertices to the lighter block that still has room."""
    vw = hg.v_weight
    for v in hg.vertices():
        if part[v] >= 0:
            continue
        order = (0, 1) if weights[0] <= weights[1] else (1, 0)
        target = order[0]
        if weights[target] + vw[v] > caps[target] and weights[order[1]] + vw[v] <= caps[order[1]]:
            target = order[1]
        part[v] = target
        weights[target] += vw[v]


def random_bipartition(hg: Hypergraph, config: PortfolioConfig, rng: random.Random) -> Candidate:
    vw = hg.v_weight
    caps = config.caps
    order = hg.vertices()
    rng.shuffle(order)
    part = [-1] * len(hg.v_enabled)
    weights = [0, 0]
    for v in order:
        b = rng.randrange(2)
        if weights[b] + vw[v] > caps[b]:
            if weights[1 - b] + vw[v] <= caps[1 - b] or weights[1 - b] < weights[b]:
                b = 1 - b
        part[v] = b
        weights[b] += vw[v]
    return evaluate(hg, part, config, "random")


def _bfs_order(hg: Hypergraph, start: int, rng: random.Random, visited: list[bool]) -> list[int]:
    """Vertices of ``start``'s component in BFS order, new neighbors shuffled per expansion."""
    order = [start]
    visited[start] = True
    queue = deque([start])
    while queue:
        v = queue.popleft()
        fresh = []
        for e in hg.incident_nets(v):
            for p in hg.pins(e):
                if not visited[p]:
                    visited[p] = True
                    fresh.append(p)
        rng.shuffle(fresh)
        order.extend(fresh)
        queue.extend(fresh)
    return order


def bfs_bipartition(hg: Hypergraph, config: PortfolioConfig, rng: random.Random) -> Candidate:
    vw = hg.v_weight
    caps = config.caps
    target = config.perfect_weights[0]
    verts = hg.vertices()
    part = [-1] * len(hg.v_enabled)
    visited = [False] * len(hg.v_enabled)
    weights = [0, 0]
    restarts = verts[:]
    rng.shuffle(restarts)
    ri = 0
    start = rng.choice(verts)
    while weights[0] < target:
        for v in _bfs_order(hg, start, rng, visited):
            if weights[0] >= target:
                break
            if weights[0] + vw[v] <= caps[0]:
                part[v] = 0
                weights[0] += vw[v]
        while ri < len(restarts) and visited[restarts[ri]]:
            ri += 1
        if ri == len(restarts):
            break
        start = restarts[ri]
    for v in verts:
        if part[v] < 0:
            part[v] = 1
    return evaluate(hg, part, config, "bfs")


def pseudo_peripheral_pair(hg: Hypergraph, rng: random.Random) -> tuple[int, int]:
    verts = hg.vertices()
    n = len(hg.v_enabled)
    start = rng.choice(verts)
    a = _bfs_order(hg, start, rng, [False] * n)[-1]
    b = _bfs_order(hg, a, rng, [False] * n)[-1]
    if a == b and len(verts) > 1:
        b = rng.choice([v for v in verts if v != a])
    return a, b


def greedy_hypergraph_growing(
    hg: Hypergraph,
    config: PortfolioConfig,
    rng: random.Random,
    score: str = "fm",
    growth: str = "global",
    on_assign: Callable[[list[int], int, int, int], None] | None = None,
) -> Candidate:
    """Grow two clusters from a pseudo-peripheral pair, highest score first.

    Scores for adding an unassigned vertex v to block i (pins count only once
    assigned):
      fm       sum of w(e) over nets whose other pins are all in i,
               minus w(e) over nets without any pin in i
      max_net  sum of w(e) over nets already connected to i
      max_pin  number of pins already in i over all incident nets

    ``on_assign(part, v, i, score)`` is called before each greedy step.
    """
    if score not in SCORES or growth not in GROWTHS:
        raise ValueError(f"unknown GHG variant {score}/{growth}")
    A = hg._adj
    e_first = hg.e_first
    e_size = hg.e_size
    e_weight = hg.e_weight
    vw = hg.v_weight
    n = len(hg.v_enabled)
    m = len(hg.e_enabled)
    caps = config.caps
    perfect = config.perfect_weights
    verts = hg.vertices()

    part = [-1] * n
    weights = [0, 0]
    phi = ([0] * m, [0] * m)
    if score == "fm":
        init = [0] * n
        for v in verts:
            f = hg.v_first[v]
            init[v] = -sum(e_weight[e] for e in A[f:f + hg.v_size[v]])
        gains = (init, init[:])
    else:
        gains = ([0] * n, [0] * n)
    pqs = (AddressablePQ(), AddressablePQ())
    done = [False, False]
    remaining = [len(verts)]
    restart_order = verts[:]
    rng.shuffle(restart_order)
    restart_pos = [0]

    def assign(v: int, i: int) -> None:
        part[v] = i
        weights[i] += vw[v]
        remaining[0] -= 1
        for q in pqs:
            if v in q:
                q.remove(v)
        phi_i = phi[i]
        g = gains[i]
        pq = pqs[i]
        open_block = not done[i]
        fv = hg.v_first[v]
        for e in A[fv:fv + hg.v_size[v]]:
            phi_i[e] += 1
            c = phi_i[e]
            s = e_size[e]
            w = e_weight[e]
            f = e_first[e]
            pins = A[f:f + s]
            if score == "max_pin":
                delta = 1
            elif c == 1:
                delta = w
            else:
                delta = 0
            if delta:
                for p in pins:
                    if part[p] < 0:
                        g[p] += delta
                        if open_block:
                            pq.push_or_update(p, g[p])
            elif open_block:
                for p in pins:
                    if part[p] < 0 and p not in pq:
                        pq.push(p, g[p])
            if score == "fm" and c == s - 1:
                for p in pins:
                    if part[p] != i:
                        if part[p] < 0:
                            g[p] += w
                            if open_block:
                                pq.push_or_update(p, g[p])
                        break
        if weights[i] >= perfect[i]:
            done[i] = True

    def restart_vertex(i: int) -> int:
        j = restart_pos[0]
        while j < len(restart_order) and part[restart_order[j]] >= 0:
            j += 1
        restart_pos[0] = j
        for v in restart_order[j:]:
            if part[v] < 0 and weights[i] + vw[v] <= caps[i]:
                return v
        return -1

    def best_move(i: int):
        """Top fitting candidate of block i as (vertex, score), or None."""
        pq = pqs[i]
        while pq:
            v, key = pq.top()
            if weights[i] + vw[v] <= caps[i]:
                return v, key
            pq.remove(v)
        v = restart_vertex(i)
        if v < 0:
            return None
        return v, gains[i][v]

    def grow(i: int) -> bool:
        mv = best_move(i)
        if mv is None:
            done[i] = True
            return False
        if on_assign is not None:
            on_assign(part, mv[0], i, mv[1])
        assign(mv[0], i)
        return True

    a, b = pseudo_peripheral_pair(hg, rng)
    assign(a, 0)
    if growth == "sequential":
        while remaining[0] and not done[0]:
            grow(0)
    else:
        if part[b] < 0:
            assign(b, 1)
        turn = 0
        while remaining[0] and not (done[0] and done[1]):
            if growth == "round_robin":
                i = turn if not done[turn] else 1 - turn
                turn = 1 - turn
                grow(i)
            else:
                options = []
                for i in (0, 1):
                    if not done[i]:
                        mv = best_move(i)
                        if mv is None:
                            done[i] = True
                        else:
                            options.append((mv[1], i, mv[0]))
                if not options:
                    break
                if len(options) == 2 and options[0][0] == options[1][0]:
                    pick = options[rng.randrange(2)]
                else:
                    pick = max(options)
                if on_assign is not None:
                    on_assign(part, pick[2], pick[1], pick[0])
                assign(pick[2], pick[1])
    if growth == "sequential":
        for v in verts:
            if part[v] < 0:
                part[v] = 1
                weights[1] += vw[v]
    else:
        _fill_rest(hg, part, weights, caps)
    return evaluate(hg, part, config, f"ghg_{score}_{growth}")


def ghg_score(hg: Hypergraph, part: Sequence[int], v: int, i: int, score: str) -> int:
    """From-scratch value of a growth score; unassigned pins have block -1."""
    total = 0
    for e in hg.incident_nets(v):
        pins = hg.pins(e)
        w = hg.e_weight[e]
        in_i = sum(1 for p in pins if part[p] == i)
        if score == "max_pin":
            total += in_i
        elif score == "max_net":
            total += w if in_i else 0
        else:
            total += w * (in_i == len(pins) - 1) - w * (in_i == 0)
    return total


def sclap_bipartition(hg: Hypergraph, config: PortfolioConfig, rng: random.Random) -> Candidate:
    """Size-constrained label propagation seeded at a pseudo-peripheral pair."""
    A = hg._adj
    e_weight = hg.e_weight
    vw = hg.v_weight
    caps = config.caps
    n = len(hg.v_enabled)
    m = len(hg.e_enabled)
    verts = hg.vertices()
    label = [-1] * n
    weights = [0, 0]
    phi = ([0] * m, [0] * m)
    unlabeled = [len(verts)]

    def set_label(v: int, new: int) -> None:
        old = label[v]
        fv = hg.v_first[v]
        nets = A[fv:fv + hg.v_size[v]]
        if old >= 0:
            weights[old] -= vw[v]
            po = phi[old]
            for e in nets:
                po[e] -= 1
        else:
            unlabeled[0] -= 1
        label[v] = new
        weights[new] += vw[v]
        pn = phi[new]
        for e in nets:
            pn[e] += 1

    a, b = pseudo_peripheral_pair(hg, rng)
    for seed, lab in ((a, 0), (b, 1)):
        if label[seed] >= 0:
            continue
        set_label(seed, lab)
        nbrs = [x for x in hg.neighbors(seed) if label[x] < 0]
        rng.shuffle(nbrs)
        placed = 0
        for x in nbrs:
            if placed >= config.tau:
                break
            if weights[lab] + vw[x] <= caps[lab]:
                set_label(x, lab)
                placed += 1

    order = verts[:]
    for _ in range(MAX_LP_ROUNDS):
        changed = False
        rng.shuffle(order)
        for v in order:
            cur = label[v]
            support = [0, 0]
            fv = hg.v_first[v]
            for e in A[fv:fv + hg.v_size[v]]:
                w = e_weight[e]
                c0 = phi[0][e] - (cur == 0)
                c1 = phi[1][e] - (cur == 1)
                if c0 > 0:
                    support[0] += w
                if c1 > 0:
                    support[1] += w
            best = -1
            choice = []
            for lab in (0, 1):
                if support[lab] == 0:
                    continue
                if lab != cur and weights[lab] + vw[v] > caps[lab]:
                    continue
                if support[lab] > best:
                    best = support[lab]
                    choice = [lab]
                elif support[lab] == best:
                    choice.append(lab)
            if not choice:
                continue
            if cur in choice:
                new = cur
            else:
                new = choice[0] if len(choice) == 1 else choice[rng.randrange(len(choice))]
            if new != cur:
                set_label(v, new)
                changed = True
        if not changed and unlabeled[0] == 0:
            break
    part = label[:]
    _fill_rest(hg, part, weights, caps)
    return evaluate(hg, part, config, "sclap")


def _ghg(score: str, growth: str) -> Callable[[Hypergraph, PortfolioConfig, random.Random], Candidate]:
    def run(hg, config, rng):
        return greedy_hypergraph_growing(hg, config, rng, score, growth)
    run.__name__ = f"ghg_{score}_{growth}"
    return run


ALGORITHMS: list[tuple[str, Callable[[Hypergraph, PortfolioConfig, random.Random], Candidate]]] = (
    [("random", random_bipartition), ("bfs", bfs_bipartition)]
    + [(f"ghg_{s}_{g}", _ghg(s, g)) for s in SCORES for g in GROWTHS]
    + [("sclap", sclap_bipartition)]
)


def better(a: Candidate, b: Candidate | None) -> bool:
    """Selection order: balanced before imbalanced; then cut, then imbalance
    for balanced candidates, imbalance then cut otherwise. Ties keep ``b``."""
    if b is None:
        return True
    if a.balanced != b.balanced:
        return a.balanced
    if a.balanced:
        return (a.cut, a.imbalance) < (b.cut, b.imbalance)
    return (a.imbalance, a.cut) < (b.imbalance, b.cut)


def select_best(candidates: Sequence[Candidate]) -> Candidate:
    best = None
    for c in candidates:
        if better(c, best):
            best = c
    if best is None:
        raise ValueError("no candidates")
    return best


@dataclass
class PortfolioResult:
    best: Candidate
    evaluated: int = 0
    candidates: list[Candidate] = field(default_factory=list)


def run_portfolio(hg: Hypergraph, config: PortfolioConfig, rng: random.Random | None = None,
                  keep_candidates: bool = False) -> PortfolioResult:
    if rng is None:
        rng = random.Random(config.seed)
    best = None
    kept = []
    count = 0
    for _, algo in ALGORITHMS:
        for _ in range(config.runs_per_algorithm):
            cand = algo(hg, config, rng)
            count += 1
            if keep_candidates:
                kept.append(cand)
            if better(cand, best):
                best = cand
    return PortfolioResult(best, count, kept)
