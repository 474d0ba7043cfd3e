"""Benchmark harness: repeated runs over a directory of .hgr instances."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .io import load_hgr
from .partitioner import PartitionerConfig, partition


@dataclass
class InstanceReport:
    instance: str
    k: int
    epsilon: float
    runs: int
    mean_cut: float
    best_cut: int
    mean_time: float
    imbalanced_runs: int
    cuts: list[int] = field(default_factory=list)


@dataclass
class AggregateReport:
    k: int
    epsilon: float
    instances: int
    gmean_mean_cut: float
    gmean_best_cut: float
    gmean_time: float


def geometric_mean_cut(values: Sequence[float]) -> float:
    """Geometric mean with zero cuts counted as one."""
    return statistics.geometric_mean([v if v > 0 else 1 for v in values])


def bench_harness(directory: str | Path, ks: Sequence[int], epsilons: Sequence[float],
                  repetitions: int = 10, base_seed: int = 0,
                  config: PartitionerConfig | None = None) -> dict:
    paths = sorted(Path(directory).glob("*.hgr"))
    per_instance: list[InstanceReport] = []
    for path in paths:
        hg, _, _ = load_hgr(path)
        for k in ks:
            for eps in epsilons:
                cuts, times, imbalanced = [], [], 0
                for rep in range(repetitions):
                    t0 = time.perf_counter()
                    res = partition(hg, k, eps, config, seed=base_seed + rep)
                    times.append(time.perf_counter() - t0)
                    cuts.append(res.total_cut)
                    imbalanced += not res.balanced
                per_instance.append(InstanceReport(
                    path.stem, k, eps, repetitions, statistics.fmean(cuts), min(cuts),
                    statistics.fmean(times), imbalanced, cuts))

    aggregates = []
    for k in ks:
        for eps in epsilons:
            rows = [r for r in per_instance if r.k == k and r.epsilon == eps]
            if not rows:
                continue
            aggregates.append(AggregateReport(
                k, eps, len(rows),
                geometric_mean_cut([r.mean_cut for r in rows]),
                geometric_mean_cut([r.best_cut for r in rows]),
                statistics.geometric_mean([max(r.mean_time, 1e-9) for r in rows]),
            ))
    return {
        "instances": [asdict(r) for r in per_instance],
        "aggregates": [asdict(a) for a in aggregates],
    }
