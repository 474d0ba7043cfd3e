"""From-scratch reference computations and an exhaustive bisection solver.

Nothing here keeps incremental state; these functions are the comparison side
for the incremental data structures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .hypergraph import Hypergraph
from .partition import max_block_weight, weight_cap

MAX_ORACLE_VERTICES = 16


@dataclass
class OracleResult:
    best_cut: int
    best_assignment: list[int]
    feasible: bool


def recompute_cut(hg: Hypergraph, assignment: Sequence[int]) -> int:
    """Total weight of nets spanning more than one block."""
    cut = 0
    for e in hg.nets():
        pins = hg.pins(e)
        b = assignment[pins[0]]
        for p in pins:
            if assignment[p] != b:
                cut += hg.e_weight[e]
                break
    return cut


def recompute_phi(hg: Hypergraph, assignment: Sequence[int], k: int = 2) -> dict[int, list[int]]:
    table = {}
    for e in hg.nets():
        row = [0] * k
        for p in hg.pins(e):
            row[assignment[p]] += 1
        table[e] = row
    return table


def recompute_gain(hg: Hypergraph, assignment: Sequence[int], v: int) -> int:
    """Cut reduction when moving ``v`` to the other block of a bipartition."""
    own = assignment[v]
    gain = 0
    for e in hg.incident_nets(v):
        pins = hg.pins(e)
        size = len(pins)
        in_own = sum(1 for p in pins if assignment[p] == own)
        if size - in_own == size - 1:
            gain += hg.e_weight[e]
        if in_own == size:
            gain -= hg.e_weight[e]
    return gain


def naive_parallel_removals(hg: Hypergraph, u: int) -> set[int]:
    """Nets in I(u) that an all-pairs pin comparison would remove (smallest id survives)."""
    nets = sorted(hg.incident_nets(u))
    removed = set()
    for i, a in enumerate(nets):
        if a in removed:
            continue
        pa = sorted(hg.pins(a))
        for b in nets[i + 1:]:
            if b not in removed and sorted(hg.pins(b)) == pa:
                removed.add(b)
    return removed


def exact_bisection(hg: Hypergraph, epsilon: float) -> OracleResult:
    """Minimum-cut bisection with both blocks non-empty and within (1+eps)*ceil(c(V)/2)."""
    verts = hg.vertices()
    n = len(verts)
    if n > MAX_ORACLE_VERTICES:
        raise ValueError(f"exact bisection limited to {MAX_ORACLE_VERTICES} vertices, got {n}")
    if n < 2:
        raise ValueError("exact bisection needs at least two vertices")
    index = {v: i for i, v in enumerate(verts)}
    weights = [hg.v_weight[v] for v in verts]
    total = sum(weights)
    cap = weight_cap(max_block_weight(total, 2, epsilon))
    nets = []
    for e in hg.nets():
        mask = 0
        for p in hg.pins(e):
            mask |= 1 << index[p]
        nets.append((mask, hg.e_weight[e]))
    full = (1 << n) - 1

    best_cut = math.inf
    best_mask = None
    # vertex 0 fixed in block 0; bit i set means block 1
    for mask in range(0, 1 << n, 2):
        if mask == 0:
            continue
        w1 = 0
        for i in range(1, n):
            if mask >> i & 1:
                w1 += weights[i]
        if w1 > cap or total - w1 > cap:
            continue
        cut = 0
        inv = full ^ mask
        for nm, w in nets:
            if nm & mask and nm & inv:
                cut += w
                if cut >= best_cut:
                    break
        if cut < best_cut:
            best_cut = cut
            best_mask = mask
    assignment = [-1] * len(hg.v_enabled)
    if best_mask is None:
        return OracleResult(best_cut=-1, best_assignment=assignment, feasible=False)
    for v, i in index.items():
        assignment[v] = best_mask >> i & 1
    return OracleResult(best_cut=int(best_cut), best_assignment=assignment, feasible=True)
