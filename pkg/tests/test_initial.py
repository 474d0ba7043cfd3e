import math
import random

import pytest

from nhgp.generators import chain, random_hypergraph
from nhgp.hypergraph import Hypergraph
from nhgp.initial import (
    ALGORITHMS,
    Candidate,
    PortfolioConfig,
    bfs_bipartition,
    ghg_score,
    greedy_hypergraph_growing,
    pseudo_peripheral_pair,
    random_bipartition,
    run_portfolio,
    sclap_bipartition,
    select_best,
)
from nhgp.oracle import recompute_cut


def cfg(hg, eps=0.03, **kw):
    return PortfolioConfig.balanced(hg.total_weight(), eps, **kw)


def test_portfolio_lineup():
    names = [n for n, _ in ALGORITHMS]
    assert len(names) == 12 and names[0] == "random" and names[1] == "bfs" and names[-1] == "sclap"


def test_random_two_vertices():
    hg = Hypergraph(2, [[0, 1]])
    c = random_bipartition(hg, cfg(hg), random.Random(0))
    assert sorted(c.assignment) == [0, 1]


def test_random_deterministic_and_capped():
    hg = Hypergraph(100, [[i, i + 1] for i in range(99)])
    conf = PortfolioConfig(max_weights=(52, 52), perfect_weights=(50, 50))
    a = random_bipartition(hg, conf, random.Random(3))
    b = random_bipartition(hg, conf, random.Random(3))
    assert a.assignment == b.assignment
    assert max(a.block_weights) <= 52


def test_bfs_on_chain_is_contiguous():
    hg = chain(20)
    c = bfs_bipartition(hg, cfg(hg, 0.0), random.Random(1))
    blocks = c.assignment
    assert blocks.count(0) == 10
    # block 0 is a contiguous segment, so the cut is at most 2
    assert c.cut <= 2


def test_bfs_restarts_on_disconnected():
    hg = Hypergraph(10, [[0, 1], [2, 3, 4, 5, 6, 7, 8, 9]])
    c = bfs_bipartition(hg, cfg(hg, 0.0), random.Random(0))
    assert c.block_weights == (5, 5)


def test_bfs_two_vertices():
    hg = Hypergraph(2, [[0, 1]])
    c = bfs_bipartition(hg, cfg(hg, 0.0), random.Random(0))
    assert sorted(c.assignment) == [0, 1]


def test_pseudo_peripheral_on_path():
    hg = chain(15)
    assert set(pseudo_peripheral_pair(hg, random.Random(4))) == {0, 14}


def test_pseudo_peripheral_one_net():
    hg = Hypergraph(5, [[0, 1, 2, 3, 4]])
    a, b = pseudo_peripheral_pair(hg, random.Random(0))
    assert a != b


@pytest.mark.parametrize("score", ["fm", "max_net", "max_pin"])
@pytest.mark.parametrize("growth", ["global", "sequential", "round_robin"])
def test_ghg_variants_produce_valid_candidates(score, growth):
    hg = random_hypergraph(60, 90, seed=3, max_vertex_weight=3)
    conf = cfg(hg, 0.05)
    c = greedy_hypergraph_growing(hg, conf, random.Random(2), score, growth)
    assert set(c.assignment) == {0, 1}
    assert c.cut == recompute_cut(hg, c.assignment)
    assert c.algorithm == f"ghg_{score}_{growth}"


def test_ghg_score_definitions():
    hg = Hypergraph(5, [[0, 1], [0, 2], [3, 4]])
    part = [-1, 0, 0, -1, -1]
    assert ghg_score(hg, part, 0, 0, "max_pin") == 2
    assert ghg_score(hg, part, 0, 0, "max_net") == 2
    assert ghg_score(hg, part, 0, 0, "fm") == 2
    # a single incident net that becomes internal scores +w
    hg1 = Hypergraph(3, [[0, 1, 2]], net_weights=[4])
    assert ghg_score(hg1, [-1, 1, 1], 0, 1, "fm") == 4


@pytest.mark.parametrize("score", ["fm", "max_net", "max_pin"])
@pytest.mark.parametrize("growth", ["global", "sequential", "round_robin"])
def test_ghg_incremental_scores_match_definition(score, growth):
    for seed in range(5):
        hg = random_hypergraph(40, 70, seed=seed, max_net_weight=3)
        steps = []

        def check(part, v, i, key):
            steps.append(1)
            assert key == ghg_score(hg, part, v, i, score)

        greedy_hypergraph_growing(hg, cfg(hg), random.Random(seed), score, growth, on_assign=check)
        assert steps


def test_sclap_dumbbell():
    clique_a = [[i, j] for i in range(5) for j in range(i + 1, 5)]
    clique_b = [[i + 5, j + 5] for i in range(5) for j in range(i + 1, 5)]
    hg = Hypergraph(10, clique_a + clique_b + [[4, 5]])
    best = min((sclap_bipartition(hg, cfg(hg, 0.0, tau=2), random.Random(s)) for s in range(10)),
               key=lambda c: c.cut)
    assert best.cut == 1


def test_sclap_large_tau_and_determinism():
    hg = random_hypergraph(40, 60, seed=1)
    a = sclap_bipartition(hg, cfg(hg, tau=100), random.Random(6))
    b = sclap_bipartition(hg, cfg(hg, tau=100), random.Random(6))
    assert a.assignment == b.assignment


def cand(cut, imb, bal):
    return Candidate([], cut, imb, bal)


def test_selection_rules():
    assert select_best([cand(5, 0.0, True), cand(0, 0.01, True)]).cut == 0
    assert select_best([cand(0, 0.5, False), cand(9, 0.0, True)]).cut == 9
    best = select_best([cand(1, 0.3, False), cand(9, 0.1, False), cand(0, 0.2, False)])
    assert best.imbalance == 0.1
    first = cand(3, 0.0, True)
    assert select_best([first, cand(3, 0.0, True)]) is first


def test_portfolio_counts_and_zero_cut():
    hg = Hypergraph(6, [[0, 1, 2], [3, 4, 5]])
    res = run_portfolio(hg, cfg(hg, 0.0), random.Random(0), keep_candidates=True)
    assert res.evaluated == 240 and len(res.candidates) == 240
    assert res.best.cut == 0 and res.best.balanced


def test_portfolio_all_imbalanced_picks_least():
    hg = Hypergraph(3, [[0, 1, 2]], vertex_weights=[10, 1, 1])
    res = run_portfolio(hg, cfg(hg, 0.0, runs_per_algorithm=2), random.Random(0), keep_candidates=True)
    assert not res.best.balanced
    assert res.best.imbalance == min(c.imbalance for c in res.candidates)


def test_balance_of_portfolio_on_random():
    hg = random_hypergraph(80, 120, seed=5)
    res = run_portfolio(hg, cfg(hg, 0.03, runs_per_algorithm=3), random.Random(1))
    assert res.best.balanced
    assert max(res.best.block_weights) <= math.floor(1.03 * 40)
