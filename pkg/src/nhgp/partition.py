"""Incrementally maintained bipartition of a hypergraph."""

from __future__ import annotations

import math
from typing import Sequence

from .hypergraph import Hypergraph

# slack when turning a fractional weight bound into an integer cap
_ROUND_SLACK = 1e-9


def max_block_weight(total_weight: int, k: int, epsilon: float) -> float:
    """L_max = (1 + eps) * ceil(c(V) / k)."""
    return (1.0 + epsilon) * math.ceil(total_weight / k)


def weight_cap(bound: float) -> int:
    """Largest integer block weight that satisfies ``weight <= bound``."""
    return math.floor(bound + _ROUND_SLACK)


def kway_imbalance(block_weights: Sequence[int], total_weight: int) -> float:
    k = len(block_weights)
    perfect = math.ceil(total_weight / k) if total_weight else 1
    return max(block_weights) / perfect - 1.0


def kway_block_weights(hg: Hypergraph, blocks: Sequence[int], k: int) -> list[int]:
    weights = [0] * k
    for v in hg.vertices():
        weights[blocks[v]] += hg.v_weight[v]
    return weights


class PartitionState:
    """Bipartition with pin counts per block, block weights and cut bookkeeping.

    ``max_weights`` are the per-block upper bounds, ``perfect_weights`` the
    per-block reference weights used for the imbalance value.
    """

    k = 2

    def __init__(
        self,
        hg: Hypergraph,
        assignment: Sequence[int],
        max_weights: Sequence[float] | None = None,
        perfect_weights: Sequence[int] | None = None,
    ):
        n = len(hg.v_enabled)
        m = len(hg.e_enabled)
        if len(assignment) < n:
            raise ValueError("assignment shorter than vertex count")
        self.hg = hg
        part = [-1] * n
        weights = [0, 0]
        for v in hg.vertices():
            b = assignment[v]
            if b not in (0, 1):
                raise ValueError(f"vertex {v} not assigned to a block in [0, 2)")
            part[v] = b
            weights[b] += hg.v_weight[v]
        self.part = part
        self.block_weight = weights
        total = weights[0] + weights[1]
        if perfect_weights is None:
            half = math.ceil(total / 2)
            perfect_weights = (half, half)
        if max_weights is None:
            max_weights = (math.inf, math.inf)
        self.perfect_weights = tuple(max(1, int(p)) for p in perfect_weights)
        self.max_weights = tuple(float(x) for x in max_weights)
        self.caps = tuple(weight_cap(x) if x != math.inf else math.inf for x in self.max_weights)

        self.phi = [[0] * m, [0] * m]
        self.cut_nets = [0] * n
        self.cut = 0
        for e in hg.nets():
            self._count_net(e)

    def _count_net(self, e: int) -> None:
        hg = self.hg
        part = self.part
        p0 = p1 = 0
        pins = hg.pins(e)
        for p in pins:
            if part[p]:
                p1 += 1
            else:
                p0 += 1
        self.phi[0][e] = p0
        self.phi[1][e] = p1
        if p0 and p1:
            self.cut += hg.e_weight[e]
            cut_nets = self.cut_nets
            for p in pins:
                cut_nets[p] += 1

    # ------------------------------------------------------------------ queries

    def is_border(self, v: int) -> bool:
        return self.cut_nets[v] > 0

    def connected_blocks(self, v: int) -> set[int]:
        """R(v): blocks other than b[v] that some incident net touches."""
        other = 1 - self.part[v]
        phi = self.phi[other]
        for e in self.hg.incident_nets(v):
            if phi[e]:
                return {other}
        return set()

    def is_cut(self, e: int) -> bool:
        return self.phi[0][e] > 0 and self.phi[1][e] > 0

    def imbalance(self) -> float:
        w = self.block_weight
        p = self.perfect_weights
        return max(w[0] / p[0], w[1] / p[1]) - 1.0

    def is_balanced(self) -> bool:
        w = self.block_weight
        return w[0] <= self.caps[0] and w[1] <= self.caps[1]

    def overloaded(self, block: int) -> bool:
        return self.block_weight[block] > self.caps[block]

    def underloaded(self, block: int) -> bool:
        return self.block_weight[block] < self.max_weights[block]

    def assignment(self) -> list[int]:
        return list(self.part)

    # ---------------------------------------------------------------- mutation

    def move(self, v: int, to: int) -> None:
        part = self.part
        frm = part[v]
        if frm == to:
            raise ValueError(f"vertex {v} already in block {to}")
        hg = self.hg
        A = hg._adj
        e_first = hg.e_first
        e_size = hg.e_size
        e_weight = hg.e_weight
        phi_from = self.phi[frm]
        phi_to = self.phi[to]
        cut_nets = self.cut_nets
        w = hg.v_weight[v]
        self.block_weight[frm] -= w
        self.block_weight[to] += w
        part[v] = to
        fv = hg.v_first[v]
        for e in A[fv:fv + hg.v_size[v]]:
            pf = phi_from[e] - 1
            pt = phi_to[e] + 1
            phi_from[e] = pf
            phi_to[e] = pt
            if pt == 1 and pf > 0:
                # internal -> cut
                self.cut += e_weight[e]
                f = e_first[e]
                for p in A[f:f + e_size[e]]:
                    cut_nets[p] += 1
            elif pf == 0 and pt > 1:
                # cut -> internal
                self.cut -= e_weight[e]
                f = e_first[e]
                for p in A[f:f + e_size[e]]:
                    cut_nets[p] -= 1

    def on_uncontract(self, u: int, v: int) -> None:
        """Place the just-uncontracted ``v`` next to ``u`` and fix pin counts."""
        hg = self.hg
        b = self.part[u]
        self.part[v] = b
        phi_b = self.phi[b]
        nets_u = set(hg.incident_nets(u))
        cut_u = cut_v = 0
        phi0, phi1 = self.phi
        for e in hg.incident_nets(v):
            if e in nets_u:
                phi_b[e] += 1
            if phi0[e] and phi1[e]:
                cut_v += 1
        for e in nets_u:
            if phi0[e] and phi1[e]:
                cut_u += 1
        self.cut_nets[u] = cut_u
        self.cut_nets[v] = cut_v

    def on_net_restored(self, e: int, representative: int = -1) -> None:
        """Account for a re-enabled net; ``representative`` names its parallel survivor."""
        if representative >= 0 and self.is_cut(representative):
            # weight moves from the survivor to e; the total cut stays the same
            self.cut -= self.hg.e_weight[e]
        self._count_net(e)
