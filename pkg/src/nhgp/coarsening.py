"""n-level coarsening: contract the best-rated vertex pair, one pair per level."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .hypergraph import ContractionMemento, Hypergraph, NetRemovalRecord
from .pq import AddressablePQ

FULL = "full"
LAZY = "lazy"


@dataclass
class CoarseningConfig:
    t: int = 320
    s: float = 3.25
    strategy: str = LAZY
    seed: int = 0

    def __post_init__(self):
        if self.t < 2:
            raise ValueError("t must be at least 2")
        if self.s <= 0:
            raise ValueError("s must be positive")
        if self.strategy not in (FULL, LAZY):
            raise ValueError(f"unknown re-rating strategy {self.strategy!r}")


class Rating(NamedTuple):
    score: float
    partner: int
    valid: bool = True


@dataclass
class Level:
    """One contraction plus the nets removed right after it."""

    memento: ContractionMemento
    removed: list[NetRemovalRecord] = field(default_factory=list)


@dataclass
class Journal:
    levels: list[Level] = field(default_factory=list)
    rating_calls: int = 0
    rating_work: int = 0  # pins scanned while rating

    def __len__(self) -> int:
        return len(self.levels)


def max_vertex_weight(total_weight: int, t: int, s: float) -> float:
    """c_max = s * ceil(c(V) / t)."""
    return s * math.ceil(total_weight / t)


def rate(hg: Hypergraph, u: int, c_max: float, rng: random.Random, counter: Journal | None = None,
         scratch: list[float] | None = None):
    """Best partner of ``u`` under the weight-scaled heavy-edge rating.

    Returns ``None`` when no neighbor can be merged with ``u`` without the
    merged weight exceeding ``c_max``. ``scratch`` is an all-zero list of
    length ``len(hg.v_enabled)`` reused across calls; it is zero again on return.
    """
    A = hg._adj
    e_first = hg.e_first
    e_size = hg.e_size
    e_weight = hg.e_weight
    acc = scratch if scratch is not None else [0.0] * len(hg.v_enabled)
    touched = []
    fu = hg.v_first[u]
    work = 0
    for e in A[fu:fu + hg.v_size[u]]:
        s = e_size[e]
        if s < 2:
            continue
        val = e_weight[e] / (s - 1)
        f = e_first[e]
        work += s
        for p in A[f:f + s]:
            if not acc[p]:
                touched.append(p)
            acc[p] += val
    if counter is not None:
        counter.rating_calls += 1
        counter.rating_work += work
    vw = hg.v_weight
    cu = vw[u]
    best = -1.0
    partner = -1
    ties = 0
    for p in touched:
        sc = acc[p]
        acc[p] = 0.0
        if p == u:
            continue
        cp = vw[p]
        if cu + cp > c_max:
            continue
        r = sc / (cu * cp) if cu * cp else math.inf
        if r > best:
            best = r
            partner = p
            ties = 1
        elif r == best:
            ties += 1
            if rng.randrange(ties) == 0:
                partner = p
    if partner < 0:
        return None
    return Rating(best, partner)


def coarsen(
    hg: Hypergraph,
    config: CoarseningConfig,
    rng: random.Random | None = None,
    on_extract: Callable[[int, Rating], None] | None = None,
) -> Journal:
    """Contract ``hg`` in place until at most ``t`` vertices remain or no pair is eligible."""
    if rng is None:
        rng = random.Random(config.seed)
    journal = Journal()
    if hg.num_vertices <= config.t:
        return journal
    c_max = max_vertex_weight(hg.total_weight(), config.t, config.s)
    fp_seed = random.Random(config.seed).getrandbits(64)
    lazy = config.strategy == LAZY
    vw = hg.v_weight

    pq = AddressablePQ()
    partner = [-1] * len(hg.v_enabled)
    invalid = [False] * len(hg.v_enabled)
    scratch = [0.0] * len(hg.v_enabled)
    for u in hg.vertices():
        if vw[u] > c_max:
            continue
        r = rate(hg, u, c_max, rng, journal, scratch)
        if r is not None:
            pq.push(u, r.score)
            partner[u] = r.partner

    def rerate(x: int) -> None:
        invalid[x] = False
        if vw[x] > c_max:
            if x in pq:
                pq.remove(x)
            return
        r = rate(hg, x, c_max, rng, journal, scratch)
        if r is None:
            if x in pq:
                pq.remove(x)
        else:
            pq.push_or_update(x, r.score)
            partner[x] = r.partner

    while hg.num_vertices > config.t and pq:
        u, score = pq.top()
        if lazy and invalid[u]:
            rerate(u)
            continue
        v = partner[u]
        if not hg.v_enabled[v] or vw[u] + vw[v] > c_max:
            rerate(u)
            continue
        if on_extract is not None:
            on_extract(u, Rating(score, v))
        memento = hg.contract(u, v)
        if v in pq:
            pq.remove(v)
        level = Level(memento)
        level.removed.extend(hg.remove_single_node_nets(u))
        level.removed.extend(hg.remove_parallel_nets(u, fp_seed))
        journal.levels.append(level)

        if vw[u] > c_max:
            pq.remove(u)
        neighbors = hg.neighbors(u)
        if lazy:
            invalid[u] = True
            for x in neighbors:
                invalid[x] = True
        else:
            rerate(u)
            for x in neighbors:
                if x in pq or vw[x] <= c_max:
                    rerate(x)
    return journal


def uncoarsen_all(hg: Hypergraph, journal: Journal) -> None:
    """Undo a whole journal without refinement."""
    for level in reversed(journal.levels):
        hg.restore_removed_nets(level.removed[::-1])
        hg.uncontract(level.memento)
