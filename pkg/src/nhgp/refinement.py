"""Localized 2-way FM local search with a persistent gain cache."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .partition import PartitionState
from .pq import AddressablePQ

LOCKED = 2


@dataclass
class RefinementConfig:
    c: int = 350
    use_locking: bool = True
    record_passes: bool = False

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("c must be at least 1")


def gain(state: PartitionState, v: int) -> int:
    """Cut reduction of moving ``v`` to the other block."""
    hg = state.hg
    own = state.part[v]
    phi_own = state.phi[own]
    phi_other = state.phi[1 - own]
    e_size = hg.e_size
    e_weight = hg.e_weight
    A = hg._adj
    f = hg.v_first[v]
    g = 0
    for e in A[f:f + hg.v_size[v]]:
        s = e_size[e]
        if phi_other[e] == s - 1:
            g += e_weight[e]
        if phi_own[e] == s:
            g -= e_weight[e]
    return g


def _contribution(state: PartitionState, e: int, block: int) -> int:
    """Gain contribution of net ``e`` to a pin sitting in ``block``."""
    w = state.hg.e_weight[e]
    return w * ((state.phi[block][e] == 1) - (state.phi[1 - block][e] == 0))


class GainCache:
    """Per-vertex cached gains plus the rollback delta of the current pass.

    ``inserted`` lists entries first computed after the last accepted prefix;
    they are dropped on rollback because they describe a state being undone.
    """

    def __init__(self, n: int):
        self.values: list[int | None] = [None] * n
        self.rollback_delta: dict[int, int] = {}
        self.inserted: list[int] = []

    def __getitem__(self, v: int) -> int | None:
        return self.values[v]

    def __contains__(self, v: int) -> bool:
        return self.values[v] is not None

    def insert(self, v: int, value: int) -> None:
        self.values[v] = value
        self.inserted.append(v)

    def add(self, v: int, delta: int) -> None:
        self.values[v] += delta
        rd = self.rollback_delta
        rd[v] = rd.get(v, 0) - delta

    def checkpoint(self) -> None:
        self.rollback_delta.clear()
        self.inserted.clear()

    def rollback(self) -> None:
        values = self.values
        for v, d in self.rollback_delta.items():
            values[v] += d
        for v in self.inserted:
            values[v] = None
        self.checkpoint()

    def apply_move(self, v: int, gain_used: int) -> None:
        """After moving ``v`` with ``gain_used`` its gain for moving back is the negation."""
        self.add(v, -gain_used - self.values[v])

    def invalidate(self, v: int) -> None:
        self.values[v] = None


def repair_cache_after_uncontraction(state: PartitionState, cache: GainCache, u: int, v: int) -> None:
    """Derive c[u] and c[v] from the pre-uncontraction c[u].

    Nets only v now holds stop counting for u; nets shared by u and v with
    exactly two pins in their block can no longer be freed by either; nets
    only u holds are taken out of v's copied value.
    """
    cu = cache.values[u]
    if cu is None:
        cache.values[v] = None
        return
    hg = state.hg
    b = state.part[u]
    phi_b = state.phi[b]
    e_weight = hg.e_weight
    nets_u = set(hg.incident_nets(u))
    cv = cu
    for e in hg.incident_nets(v):
        if e in nets_u:
            nets_u.discard(e)
            if phi_b[e] == 2:
                cu -= e_weight[e]
                cv -= e_weight[e]
        else:
            cu -= _contribution(state, e, b)
    for e in nets_u:
        cv -= _contribution(state, e, b)
    cache.values[u] = cu
    cache.values[v] = cv


@dataclass
class PassRecord:
    cut_before: int
    cut_after: int
    balanced_before: bool
    balanced_after: bool
    moves: int
    kept: int


@dataclass
class FMStats:
    passes: int = 0
    moves: int = 0
    gain_evaluations: int = 0
    log: list[PassRecord] = field(default_factory=list)


class LocalizedFM:
    """Two-way FM search seeded at an uncontracted vertex pair.

    ``pqs[i]`` holds the moves of active vertices into block ``i``.
    """

    def __init__(self, state: PartitionState, config: RefinementConfig | None = None,
                 rng: random.Random | None = None, cache: GainCache | None = None):
        self.state = state
        self.hg = state.hg
        self.config = config or RefinementConfig()
        self.rng = rng or random.Random(0)
        n = len(self.hg.v_enabled)
        self.cache = cache if cache is not None else GainCache(n)
        self.active = [False] * n
        self.marked = [False] * n
        self.pqs = (AddressablePQ(), AddressablePQ())
        self.stats = FMStats()

    # ---------------------------------------------------------------- helpers

    def gain(self, v: int) -> int:
        self.stats.gain_evaluations += 1
        return gain(self.state, v)

    def activate(self, v: int) -> None:
        val = self.cache.values[v]
        if val is None:
            val = self.gain(v)
            self.cache.insert(v, val)
        self.pqs[1 - self.state.part[v]].push(v, val)
        self.active[v] = True

    def _deactivate(self, v: int) -> None:
        self.pqs[1 - self.state.part[v]].remove(v)
        self.active[v] = False

    @staticmethod
    def _key(balanced: bool, cut: int, imbalance: float):
        return (0, cut, imbalance) if balanced else (1, imbalance, cut)

    # ------------------------------------------------------------ local search

    def local_search(self, u: int, v: int) -> None:
        """Repeat localized passes around (u, v) until a pass brings no improvement."""
        while self._pass((u, v)):
            pass

    def _pass(self, seeds) -> bool:
        state = self.state
        starts = [x for x in seeds if state.is_border(x)]
        if not starts:
            return False
        cache = self.cache
        cache.checkpoint()
        for x in starts:
            if not self.active[x]:
                self.activate(x)

        pqs = self.pqs
        rng = self.rng
        limit = self.config.c
        block_weight = state.block_weight
        max_weights = state.max_weights
        start_cut = state.cut
        start_balanced = state.is_balanced()
        start_imb = state.imbalance()
        best_key = self._key(start_balanced, start_cut, start_imb)
        best_idx = 0
        min_cut = start_cut
        min_imb = start_imb
        moves: list[tuple[int, int]] = []
        locks: dict[int, int] = {}
        stall = 0
        while stall < limit:
            pick = -1
            best_gain = None
            for i in (0, 1):
                pq = pqs[i]
                if pq and block_weight[i] < max_weights[i]:
                    g = pq.top()[1]
                    if best_gain is None or g > best_gain:
                        pick, best_gain = i, g
                    elif g == best_gain and rng.random() < 0.5:
                        pick = i
            if pick < 0:
                break
            x, g = pqs[pick].pop()
            self.active[x] = False
            frm = 1 - pick
            self._move(x, frm, pick, g, locks)
            moves.append((x, frm))

            cut = state.cut
            imb = state.imbalance()
            if cut < min_cut or imb < min_imb:
                stall = 0
                min_cut = min(min_cut, cut)
                min_imb = min(min_imb, imb)
            else:
                stall += 1
            key = self._key(state.is_balanced(), cut, imb)
            if cut <= start_cut and key < best_key:
                best_key = key
                best_idx = len(moves)
                cache.checkpoint()

        for x, frm in reversed(moves[best_idx:]):
            state.move(x, frm)
        cache.rollback()

        active = self.active
        for pq in pqs:
            for x in pq._heap:
                active[x] = False
            pq.clear()
        marked = self.marked
        for x, _ in moves:
            marked[x] = False

        self.stats.passes += 1
        self.stats.moves += len(moves)
        if self.config.record_passes:
            self.stats.log.append(PassRecord(start_cut, state.cut, start_balanced,
                                             state.is_balanced(), len(moves), best_idx))
        return best_idx > 0

    def _move(self, x: int, frm: int, to: int, g: int, locks: dict[int, int]) -> None:
        state = self.state
        hg = self.hg
        A = hg._adj
        e_first = hg.e_first
        e_size = hg.e_size
        e_weight = hg.e_weight
        part = state.part
        phi_from = state.phi[frm]
        phi_to = state.phi[to]
        fx = hg.v_first[x]
        nets = A[fx:fx + hg.v_size[x]]
        before = [(phi_from[e], phi_to[e]) for e in nets]

        self.marked[x] = True
        state.move(x, to)
        cache = self.cache
        values = cache.values
        cache.apply_move(x, g)

        active = self.active
        pqs = self.pqs
        use_locking = self.config.use_locking
        for e, (pa, pb) in zip(nets, before):
            locked = False
            if use_locking:
                st = locks.get(e)
                if st is None:
                    locks[e] = to
                elif st == LOCKED:
                    locked = True
                elif st != to:
                    locks[e] = LOCKED
            w = e_weight[e]
            if locked:
                # only already-moved pins can change here; they are never active
                if pa == 2 or pb == 1:
                    f = e_first[e]
                    for p in A[f:f + e_size[e]]:
                        if p == x:
                            continue
                        d = w if part[p] == frm and pa == 2 else (-w if part[p] == to and pb == 1 else 0)
                        if d and values[p] is not None:
                            cache.add(p, d)
                continue
            d_from = w * ((pb == 0) + (pa == 2))
            d_to = -w * ((pb == 1) + (pa == 1))
            if not (d_from or d_to):
                continue
            f = e_first[e]
            for p in A[f:f + e_size[e]]:
                if p == x:
                    continue
                d = d_from if part[p] == frm else d_to
                if not d:
                    continue
                if values[p] is not None:
                    cache.add(p, d)
                    if active[p]:
                        pqs[1 - part[p]].update(p, values[p])

        marked = self.marked
        cut_nets = state.cut_nets
        seen = {x}
        for e in nets:
            f = e_first[e]
            for p in A[f:f + e_size[e]]:
                if p in seen:
                    continue
                seen.add(p)
                if active[p]:
                    if not cut_nets[p]:
                        self._deactivate(p)
                elif not marked[p] and cut_nets[p]:
                    self.activate(p)
