"""Recursive bisection driver with adaptive per-bisection imbalance."""

from __future__ import annotations

import logging
import math
import random
import time
from dataclasses import dataclass, field

from .coarsening import CoarseningConfig, LAZY, coarsen
from .hypergraph import Hypergraph
from .initial import PortfolioConfig, run_portfolio
from .oracle import recompute_cut
from .partition import PartitionState, kway_block_weights, max_block_weight, weight_cap
from .refinement import LocalizedFM, RefinementConfig, repair_cache_after_uncontraction

log = logging.getLogger(__name__)


@dataclass
class PartitionerConfig:
    t: int = 320
    s: float = 3.25
    c: int = 350
    tau: int = 5
    ip_runs: int = 20
    coarsening: str = LAZY
    use_locking: bool = True
    record_passes: bool = False
    # clip each bisection cap at k_i * L_max; without it, rounding in the
    # caps can push a final block past L_max although every bisection fit
    clip_to_final_bound: bool = True


@dataclass
class BisectionContext:
    k_l: int
    k_h: int
    epsilon: float
    epsilon_prime: float
    perfect_weights: tuple[int, int]
    max_weights: tuple[float, float]

    @property
    def k(self) -> int:
        return self.k_h - self.k_l + 1


@dataclass
class BisectionStats:
    k_l: int
    k_h: int
    num_vertices: int
    total_weight: int
    epsilon_prime: float
    max_weights: tuple[float, float]
    block_weights: tuple[int, int]
    cut: int
    imbalance: float
    respected_targets: bool
    coarse_vertices: int
    contractions: int
    portfolio_winner: str
    initial_cut: int
    rating_work: int
    fm_passes: int
    fm_moves: int
    timings: dict[str, float] = field(default_factory=dict)


@dataclass
class BisectionOutcome:
    assignment: list[int]
    cut: int
    stats: BisectionStats
    pass_log: list = field(default_factory=list)


@dataclass
class PartitionResult:
    block_of: list[int]
    total_cut: int
    k: int
    epsilon: float
    block_weights: list[int]
    imbalance: float
    balanced: bool
    bisections: list[BisectionStats] = field(default_factory=list)
    pass_log: list = field(default_factory=list)

    @property
    def all_bisections_respected(self) -> bool:
        return all(b.respected_targets for b in self.bisections)

    @property
    def infeasible(self) -> bool:
        return not self.balanced


def adapt_epsilon(epsilon: float, k: int, k_prime: int, total_weight: int,
                  sub_weight: int, is_first: bool) -> float:
    """Imbalance budget for a k'-way recursive partition of a section hypergraph."""
    if k_prime < 2:
        raise ValueError("adaptive imbalance needs k' >= 2")
    if is_first:
        return (1.0 + epsilon) ** (1.0 / math.ceil(math.log2(k))) - 1.0
    if sub_weight <= 0:
        raise ValueError("section weight must be positive")
    base = (1.0 + epsilon) * (k_prime * total_weight) / (k * sub_weight)
    eps = base ** (1.0 / math.ceil(math.log2(k_prime))) - 1.0
    if eps < 0:
        log.warning("adapted imbalance %.6f clamped to 0 (section weight %d)", eps, sub_weight)
        eps = 0.0
    return eps


def bisection_targets(total_weight: int, k: int, epsilon_prime: float,
                      final_bound: float | None = None):
    """Perfect and maximum block weights for splitting into floor(k/2) : ceil(k/2) blocks.

    Block i ends up as k_i final blocks; with ``final_bound`` set its cap is
    at most k_i * final_bound.
    """
    ks = (k // 2, k - k // 2)
    perfect = tuple(-(-ki * total_weight // k) for ki in ks)
    caps = [(1 + epsilon_prime) * p for p in perfect]
    if final_bound is not None:
        caps = [min(c, ki * final_bound) for c, ki in zip(caps, ks)]
    return perfect, tuple(caps)


def bisect(hg: Hypergraph, ctx: BisectionContext, config: PartitionerConfig,
           rng: random.Random) -> BisectionOutcome:
    """Coarsen, partition the coarsest level, then uncoarsen with localized FM.

    ``hg`` is contracted in place and fully restored before returning.
    """
    timings = {}
    t0 = time.perf_counter()
    ccfg = CoarseningConfig(t=config.t, s=config.s, strategy=config.coarsening,
                            seed=rng.getrandbits(64))
    journal = coarsen(hg, ccfg, rng)
    t1 = time.perf_counter()
    timings["coarsening"] = t1 - t0

    coarse, ids = hg.compact()
    pcfg = PortfolioConfig(runs_per_algorithm=config.ip_runs, tau=config.tau,
                           epsilon_prime=ctx.epsilon_prime, max_weights=ctx.max_weights,
                           perfect_weights=ctx.perfect_weights)
    portfolio = run_portfolio(coarse, pcfg, rng)
    assignment = [-1] * len(hg.v_enabled)
    for i, v in enumerate(ids):
        assignment[v] = portfolio.best.assignment[i]
    t2 = time.perf_counter()
    timings["initial_partitioning"] = t2 - t1

    state = PartitionState(hg, assignment, ctx.max_weights, ctx.perfect_weights)
    initial_cut = state.cut
    fm = LocalizedFM(state, RefinementConfig(c=config.c, use_locking=config.use_locking,
                                             record_passes=config.record_passes), rng)
    cache = fm.cache
    for level in reversed(journal.levels):
        for rec in reversed(level.removed):
            hg.restore_removed_nets([rec])
            state.on_net_restored(rec.net, rec.representative_net)
        u, v = hg.uncontract(level.memento)
        state.on_uncontract(u, v)
        repair_cache_after_uncontraction(state, cache, u, v)
        fm.local_search(u, v)
    timings["refinement"] = time.perf_counter() - t2

    stats = BisectionStats(
        k_l=ctx.k_l, k_h=ctx.k_h, num_vertices=hg.num_vertices, total_weight=hg.total_weight(),
        epsilon_prime=ctx.epsilon_prime, max_weights=ctx.max_weights,
        block_weights=tuple(state.block_weight), cut=state.cut, imbalance=state.imbalance(),
        respected_targets=state.is_balanced(), coarse_vertices=coarse.num_vertices,
        contractions=len(journal), portfolio_winner=portfolio.best.algorithm,
        initial_cut=initial_cut, rating_work=journal.rating_work,
        fm_passes=fm.stats.passes, fm_moves=fm.stats.moves, timings=timings,
    )
    return BisectionOutcome(state.assignment(), state.cut, stats, fm.stats.log)


def section_hypergraphs(hg: Hypergraph, assignment):
    """Per block: the block's vertices with only the nets fully inside it."""
    out = []
    for b in (0, 1):
        verts = [v for v in hg.vertices() if assignment[v] == b]
        nets = [e for e in hg.nets() if all(assignment[p] == b for p in hg.pins(e))]
        out.append(hg.subhypergraph(verts, nets))
    return out


def partition(hg: Hypergraph, k: int, epsilon: float = 0.03,
              config: PartitionerConfig | None = None, seed: int = 0) -> PartitionResult:
    """k-way partition by recursive bisection; block ids are 0 .. k-1."""
    if config is None:
        config = PartitionerConfig()
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > hg.num_vertices:
        raise ValueError(f"k={k} exceeds the number of vertices ({hg.num_vertices})")
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    rng = random.Random(seed)
    total = hg.total_weight()
    final_bound = max_block_weight(total, k, epsilon)
    block_of = [-1] * len(hg.v_enabled)
    bisections: list[BisectionStats] = []
    pass_log = []
    cut_sum = 0

    def recurse(sub: Hypergraph, ids: list[int], k_l: int, k_h: int, first: bool) -> None:
        nonlocal cut_sum
        kk = k_h - k_l + 1
        if kk == 1 or sub.num_vertices == 0:
            for i in sub.vertices():
                block_of[ids[i]] = k_l
            return
        sub_weight = sub.total_weight()
        if first or sub_weight > 0:
            eps_prime = adapt_epsilon(epsilon, k, kk, total, sub_weight, first)
        else:
            eps_prime = epsilon
        perfect, max_w = bisection_targets(sub_weight, kk, eps_prime,
                                           final_bound if config.clip_to_final_bound else None)
        ctx = BisectionContext(k_l, k_h, epsilon, eps_prime, perfect, max_w)
        outcome = bisect(sub, ctx, config, rng)
        bisections.append(outcome.stats)
        pass_log.extend(outcome.pass_log)
        cut_sum += outcome.cut
        (h0, m0), (h1, m1) = section_hypergraphs(sub, outcome.assignment)
        recurse(h0, [ids[i] for i in m0], k_l, k_l + kk // 2 - 1, False)
        recurse(h1, [ids[i] for i in m1], k_l + kk // 2, k_h, False)

    root, root_ids = hg.compact()
    recurse(root, root_ids, 0, k - 1, True)

    weights = kway_block_weights(hg, block_of, k)
    cap = weight_cap(final_bound)
    result = PartitionResult(
        block_of=block_of, total_cut=cut_sum, k=k, epsilon=epsilon, block_weights=weights,
        imbalance=max(weights) / max(1, math.ceil(total / k)) - 1.0,
        balanced=max(weights) <= cap, bisections=bisections, pass_log=pass_log,
    )
    recomputed = recompute_cut(hg, block_of)
    if recomputed != cut_sum:
        raise AssertionError(f"cut bookkeeping mismatch: {cut_sum} != {recomputed}")
    return result
