"""Command line entry points: partition, convert, bench."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import bench_harness
from .coarsening import FULL, LAZY
from .io import HgrParseError, cnf_to_hgr, load_hgr, mtx_to_hgr, write_hgr, write_partition
from .oracle import recompute_cut
from .partitioner import PartitionerConfig, partition

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_VERIFY = 3

STATS_SCHEMA = "nhgp.run-stats/1"


def _config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=int, default=320, help="coarsest hypergraph size (default 320)")
    p.add_argument("--s", type=float, default=3.25, help="max vertex weight scale (default 3.25)")
    p.add_argument("--c", type=int, default=350, help="FM moves without improvement (default 350)")
    p.add_argument("--tau", type=int, default=5, help="SCLaP seed neighborhood (default 5)")
    p.add_argument("--ip-runs", type=int, default=20, help="runs per initial partitioner (default 20)")
    p.add_argument("--coarsening", choices=(FULL, LAZY), default=LAZY)


def _config(ns: argparse.Namespace) -> PartitionerConfig:
    return PartitionerConfig(t=ns.t, s=ns.s, c=ns.c, tau=ns.tau, ip_runs=ns.ip_runs,
                             coarsening=ns.coarsening)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nhgp", description="n-level recursive bisection hypergraph partitioner")
    p.add_argument("--hgr", required=True, help="input hypergraph in hMetis format")
    p.add_argument("--k", type=int, required=True, help="number of blocks")
    p.add_argument("--epsilon", type=float, default=0.03, help="allowed imbalance (default 0.03)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="partition file: one 0-based block id per vertex")
    p.add_argument("--stats", help="write a JSON run-stats record here")
    p.add_argument("--stats-timings", action="store_true",
                   help="include wall-clock timings in the stats record (not reproducible)")
    p.add_argument("--verify", action="store_true", help="cross-check the cut by recomputation")
    p.add_argument("-v", "--verbose", action="store_true")
    _config_args(p)
    return p


def run_stats(name, ns, result, hf, dropped, with_timings: bool) -> dict:
    bis = []
    for b in result.bisections:
        row = {
            "blocks": [b.k_l, b.k_h],
            "vertices": b.num_vertices,
            "coarse_vertices": b.coarse_vertices,
            "contractions": b.contractions,
            "epsilon_prime": b.epsilon_prime,
            "max_weights": list(b.max_weights),
            "block_weights": list(b.block_weights),
            "initial_cut": b.initial_cut,
            "cut": b.cut,
            "respected_targets": b.respected_targets,
            "portfolio_winner": b.portfolio_winner,
            "fm_passes": b.fm_passes,
            "fm_moves": b.fm_moves,
        }
        if with_timings:
            row["timings"] = b.timings
        bis.append(row)
    return {
        "schema": STATS_SCHEMA,
        "instance": name,
        "k": result.k,
        "epsilon": result.epsilon,
        "seed": ns.seed,
        "cut": result.total_cut,
        "imbalance": result.imbalance,
        "block_weights": result.block_weights,
        "config": {"t": ns.t, "s": ns.s, "c": ns.c, "tau": ns.tau, "ip_runs": ns.ip_runs,
                   "coarsening": ns.coarsening},
        "flags": {
            "infeasible": result.infeasible,
            "nets_removed_at_load": dropped,
            "duplicate_pins_removed": hf.duplicate_pins,
        },
        "bisections": bis,
    }


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        hg, hf, dropped = load_hgr(ns.hgr)
        config = _config(ns)
        result = partition(hg, ns.k, ns.epsilon, config, seed=ns.seed)
    except (OSError, HgrParseError, ValueError) as exc:
        print(f"nhgp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if ns.verify:
        # recompute on the hypergraph as read, single-node nets included
        full = hf.raw_hypergraph()
        cut = recompute_cut(full, result.block_of)
        if cut != result.total_cut:
            print(f"nhgp: verification failed: reported {result.total_cut}, recomputed {cut}",
                  file=sys.stderr)
            return EXIT_VERIFY

    if ns.output:
        write_partition(result.block_of, ns.output)
    if ns.stats:
        stats = run_stats(Path(ns.hgr).name, ns, result, hf, dropped, ns.stats_timings)
        Path(ns.stats).write_text(json.dumps(stats, indent=2, sort_keys=True) + "\n")
    print(f"cut={result.total_cut} imbalance={result.imbalance:.6f} "
          f"balanced={'yes' if result.balanced else 'no'}")
    return EXIT_INFEASIBLE if result.infeasible else EXIT_OK


def convert_main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="nhgp-convert", description="convert inputs to hMetis format")
    sub = p.add_subparsers(dest="kind", required=True)
    mtx = sub.add_parser("mtx", help="Matrix Market file, row-net model")
    mtx.add_argument("input")
    mtx.add_argument("output")
    cnf = sub.add_parser("cnf", help="DIMACS CNF, clauses as nets over variables")
    cnf.add_argument("input")
    cnf.add_argument("output")
    ns = p.parse_args(argv)
    try:
        if ns.kind == "mtx":
            hg = mtx_to_hgr(ns.input)
        else:
            hg = cnf_to_hgr(Path(ns.input).read_text())
    except (OSError, ValueError) as exc:
        print(f"nhgp-convert: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    Path(ns.output).write_text(write_hgr(hg))
    return EXIT_OK


def bench_main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="nhgp-bench", description="benchmark over a directory of .hgr files")
    p.add_argument("directory")
    p.add_argument("--k", type=int, nargs="+", default=[2])
    p.add_argument("--epsilon", type=float, nargs="+", default=[0.03])
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="seed of the first repetition")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    _config_args(p)
    ns = p.parse_args(argv)
    report = bench_harness(ns.directory, ns.k, ns.epsilon, ns.repetitions, ns.seed, _config(ns))
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if ns.report:
        Path(ns.report).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
