"""Dynamic hypergraph with exact contraction / uncontraction.

The hypergraph is stored as a bipartite graph in a modified adjacency array:
vertex and net index records point into one flat incidence array. Vertex
slices hold incident net ids, net slices hold pin ids. Contraction relinks or
deletes pin slots in place and copies the representative's slice to the end of
the array at most once; every change is recorded on an undo stack so that it
can be reversed in strict LIFO order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from operator import xor
from typing import Iterable, Sequence

MASK64 = (1 << 64) - 1


class ContractViolation(RuntimeError):
    """An undo operation was requested out of LIFO order."""


@dataclass(frozen=True)
class ContractionMemento:
    u: int
    v: int
    first: int
    size: int


@dataclass(frozen=True)
class NetRemovalRecord:
    kind: str  # "single" or "parallel"
    net: int
    representative_net: int = -1
    saved_weight: int = 0
    level: int = 0


class Hypergraph:
    """Hypergraph H = (V, E, c, w) with integer weights."""

    def __init__(
        self,
        num_vertices: int,
        nets: Sequence[Sequence[int]],
        net_weights: Sequence[int] | None = None,
        vertex_weights: Sequence[int] | None = None,
    ):
        n = num_vertices
        m = len(nets)
        if net_weights is None:
            net_weights = [1] * m
        if vertex_weights is None:
            vertex_weights = [1] * n
        if len(net_weights) != m or len(vertex_weights) != n:
            raise ValueError("weight array length mismatch")
        for w in net_weights:
            if int(w) != w or w <= 0:
                raise ValueError(f"net weights must be positive integers, got {w!r}")
        for w in vertex_weights:
            if int(w) != w or w < 0:
                raise ValueError(f"vertex weights must be non-negative integers, got {w!r}")

        incident: list[list[int]] = [[] for _ in range(n)]
        for e, pins in enumerate(nets):
            if not pins:
                raise ValueError(f"net {e} is empty")
            if len(set(pins)) != len(pins):
                raise ValueError(f"net {e} has duplicate pins")
            for p in pins:
                if not 0 <= p < n:
                    raise ValueError(f"net {e}: pin {p} out of range [0, {n})")
                incident[p].append(e)

        adj: list[int] = []
        self.v_first = [0] * n
        self.v_size = [0] * n
        for v in range(n):
            self.v_first[v] = len(adj)
            self.v_size[v] = len(incident[v])
            adj.extend(incident[v])
        self.e_first = [0] * m
        self.e_size = [0] * m
        for e, pins in enumerate(nets):
            self.e_first[e] = len(adj)
            self.e_size[e] = len(pins)
            adj.extend(pins)

        self._adj = adj
        self.v_weight = [int(w) for w in vertex_weights]
        self.e_weight = [int(w) for w in net_weights]
        self.v_enabled = [True] * n
        self.e_enabled = [True] * m
        self.initial_num_vertices = n
        self.initial_num_nets = m
        self.num_vertices = n
        self.num_nets = m
        self.num_pins = sum(len(p) for p in nets)
        self._history: list[ContractionMemento | NetRemovalRecord] = []
        self._num_contractions = 0

    # ------------------------------------------------------------------ queries

    def pins(self, e: int) -> list[int]:
        f = self.e_first[e]
        return self._adj[f:f + self.e_size[e]]

    def incident_nets(self, v: int) -> list[int]:
        f = self.v_first[v]
        return self._adj[f:f + self.v_size[v]]

    def degree(self, v: int) -> int:
        return self.v_size[v]

    def net_size(self, e: int) -> int:
        return self.e_size[e]

    def neighbors(self, v: int) -> list[int]:
        seen = {v}
        out = []
        for e in self.incident_nets(v):
            for p in self.pins(e):
                if p not in seen:
                    seen.add(p)
                    out.append(p)
        return out

    def vertices(self) -> list[int]:
        return [v for v, on in enumerate(self.v_enabled) if on]

    def nets(self) -> list[int]:
        return [e for e, on in enumerate(self.e_enabled) if on]

    def total_weight(self, vertices: Iterable[int] | None = None) -> int:
        if vertices is None:
            vertices = self.vertices()
        w = self.v_weight
        return sum(w[v] for v in vertices)

    # -------------------------------------------------------------- contraction

    def contract(self, u: int, v: int) -> ContractionMemento:
        """Merge ``v`` into representative ``u``."""
        n = len(self.v_enabled)
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"invalid contraction pair ({u}, {v})")
        if not (self.v_enabled[u] and self.v_enabled[v]):
            raise ValueError(f"contraction of disabled vertex ({u}, {v})")
        A = self._adj
        v_first = self.v_first
        v_size = self.v_size
        e_first = self.e_first
        e_size = self.e_size

        memento = ContractionMemento(u, v, v_first[u], v_size[u])
        self.v_weight[u] += self.v_weight[v]
        copy = True
        deletes = 0
        fv = v_first[v]
        for j in range(fv, fv + v_size[v]):
            e = A[j]
            f = e_first[e]
            last = f + e_size[e] - 1
            seg = A[f:last + 1]
            pos = f + seg.index(v)
            A[pos] = A[last]
            A[last] = v
            if u in seg:
                # delete operation
                e_size[e] -= 1
                deletes += 1
            else:
                # relink operation
                A[last] = u
                if copy:
                    fu = v_first[u]
                    start = len(A)
                    A.extend(A[fu:fu + v_size[u]])
                    v_first[u] = start
                    copy = False
                A.append(e)
                v_size[u] += 1
        self.v_enabled[v] = False
        self.num_vertices -= 1
        self.num_pins -= deletes
        self._num_contractions += 1
        self._history.append(memento)
        return memento

    def uncontract(self, memento: ContractionMemento) -> tuple[int, int]:
        """Reverse the most recent contraction."""
        if not self._history or self._history[-1] is not memento:
            raise ContractViolation("uncontract must reverse the most recent operation")
        self._history.pop()
        A = self._adj
        u, v = memento.u, memento.v
        self.v_enabled[v] = True
        self.num_vertices += 1
        self._num_contractions -= 1

        fv = self.v_first[v]
        nets_v = A[fv:fv + self.v_size[v]]
        # nets assumed not to have contained u, then cleared for those that did
        relinked = set(nets_v)
        relinked.difference_update(A[memento.first:memento.first + memento.size])

        e_first = self.e_first
        e_size = self.e_size
        if self.v_size[u] - memento.size > 0:
            for e in self.incident_nets(u):
                if e in relinked:
                    f = e_first[e]
                    pos = A.index(u, f, f + e_size[e])
                    A[pos] = v
        self.v_first[u] = memento.first
        self.v_size[u] = memento.size
        self.v_weight[u] -= self.v_weight[v]
        restored = 0
        for e in nets_v:
            if e not in relinked:
                e_size[e] += 1
                restored += 1
        self.num_pins += restored
        return u, v

    # -------------------------------------------------------------- net removal

    def _disable_net(self, e: int) -> None:
        A = self._adj
        v_first = self.v_first
        v_size = self.v_size
        for p in self.pins(e):
            f = v_first[p]
            last = f + v_size[p] - 1
            pos = A.index(e, f, last + 1)
            A[pos] = A[last]
            A[last] = e
            v_size[p] -= 1
        self.e_enabled[e] = False
        self.num_nets -= 1
        self.num_pins -= self.e_size[e]

    def _enable_net(self, e: int) -> None:
        v_size = self.v_size
        for p in self.pins(e):
            v_size[p] += 1
        self.e_enabled[e] = True
        self.num_nets += 1
        self.num_pins += self.e_size[e]

    def remove_single_node_nets(self, u: int) -> list[NetRemovalRecord]:
        records = []
        for e in self.incident_nets(u):
            if self.e_size[e] == 1:
                self._disable_net(e)
                rec = NetRemovalRecord("single", e, level=self._num_contractions)
                self._history.append(rec)
                records.append(rec)
        return records

    def fingerprint(self, e: int, seed: int = 0) -> int:
        x = seed & MASK64
        return reduce(xor, (p ^ x for p in self.pins(e)), 0)

    def remove_parallel_nets(self, u: int, seed: int = 0) -> list[NetRemovalRecord]:
        """Remove nets in I(u) whose pin set equals that of another net.

        Survivors are the smallest net id of each parallel group; they absorb
        the weights of the removed nets.
        """
        nets = self.incident_nets(u)
        if len(nets) < 2:
            return []
        e_size = self.e_size
        x = seed & MASK64
        A = self._adj
        e_first = self.e_first
        keyed = []
        for e in nets:
            f = e_first[e]
            s = e_size[e]
            fp = 0
            for p in A[f:f + s]:
                fp ^= p ^ x
            keyed.append((fp, s, e))
        keyed.sort()

        records = []
        i = 0
        while i < len(keyed):
            j = i + 1
            while j < len(keyed) and keyed[j][0] == keyed[i][0] and keyed[j][1] == keyed[i][1]:
                j += 1
            if j - i > 1:
                survivors: dict[tuple[int, ...], int] = {}
                for _, _, e in keyed[i:j]:
                    key = tuple(sorted(self.pins(e)))
                    rep = survivors.get(key)
                    if rep is None:
                        survivors[key] = e
                        continue
                    w = self.e_weight[e]
                    self.e_weight[rep] += w
                    self._disable_net(e)
                    rec = NetRemovalRecord("parallel", e, rep, w, self._num_contractions)
                    self._history.append(rec)
                    records.append(rec)
            i = j
        return records

    def restore_removed_nets(self, records: Sequence[NetRemovalRecord]) -> None:
        """Re-enable removed nets; ``records`` must be given newest first."""
        for rec in records:
            if not self._history or self._history[-1] is not rec:
                raise ContractViolation("net restoration out of order")
            self._history.pop()
            if rec.kind == "parallel":
                self.e_weight[rec.representative_net] -= rec.saved_weight
            self._enable_net(rec.net)

    # ----------------------------------------------------------------- builders

    def subhypergraph(
        self, vertices: Sequence[int], nets: Iterable[int]
    ) -> tuple["Hypergraph", list[int]]:
        """Compact copy on ``vertices`` with the given nets (all pins must be inside)."""
        index = {v: i for i, v in enumerate(vertices)}
        new_nets = []
        weights = []
        for e in nets:
            new_nets.append([index[p] for p in self.pins(e)])
            weights.append(self.e_weight[e])
        sub = Hypergraph(len(vertices), new_nets, weights, [self.v_weight[v] for v in vertices])
        return sub, list(vertices)

    def compact(self) -> tuple["Hypergraph", list[int]]:
        return self.subhypergraph(self.vertices(), self.nets())

    # ------------------------------------------------------------- diagnostics

    def snapshot(self):
        """Structural fingerprint: vertex weights, and net weights with pin sets."""
        verts = tuple((v, self.v_weight[v]) for v in self.vertices())
        nets = tuple(sorted((tuple(sorted(self.pins(e))), e, self.e_weight[e]) for e in self.nets()))
        degs = tuple(self.v_size[v] for v in self.vertices())
        return verts, nets, degs

    def validate(self) -> None:
        """Full-scan consistency check; raises AssertionError on violation."""
        pins_total = 0
        seen_v = set()
        for e in self.nets():
            ps = self.pins(e)
            assert self.e_weight[e] > 0, f"net {e} has non-positive weight"
            assert len(set(ps)) == len(ps), f"net {e} has duplicate pins"
            for p in ps:
                assert self.v_enabled[p], f"disabled vertex {p} in net {e}"
                assert e in self.incident_nets(p), f"asymmetry: {p} in {e}"
            pins_total += len(ps)
        deg_total = 0
        for v in self.vertices():
            nets = self.incident_nets(v)
            assert len(set(nets)) == len(nets), f"vertex {v} has duplicate nets"
            for e in nets:
                assert self.e_enabled[e], f"disabled net {e} incident to {v}"
                assert v in self.pins(e), f"asymmetry: {e} at {v}"
            deg_total += len(nets)
            seen_v.add(v)
        assert pins_total == deg_total == self.num_pins, (pins_total, deg_total, self.num_pins)
        assert len(seen_v) == self.num_vertices
        assert len(self.nets()) == self.num_nets
