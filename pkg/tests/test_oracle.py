import pytest

from nhgp.generators import random_hypergraph
from nhgp.hypergraph import Hypergraph
from nhgp.oracle import exact_bisection, naive_parallel_removals, recompute_gain


def brute_min_cut(hg, eps):
    """Enumeration without vertex fixing or pruning, for cross-checking."""
    import itertools
    import math

    n = hg.num_vertices
    total = hg.total_weight()
    cap = math.floor((1 + eps) * math.ceil(total / 2) + 1e-9)
    best = None
    for bits in itertools.product((0, 1), repeat=n):
        if 0 not in bits or 1 not in bits:
            continue
        w1 = sum(hg.v_weight[v] for v in range(n) if bits[v])
        if w1 > cap or total - w1 > cap:
            continue
        cut = sum(hg.e_weight[e] for e in hg.nets() if len({bits[p] for p in hg.pins(e)}) > 1)
        best = cut if best is None else min(best, cut)
    return best


def test_single_net():
    r = exact_bisection(Hypergraph(2, [[0, 1]]), 0.0)
    assert r.feasible and r.best_cut == 1


def test_two_triangles():
    hg = Hypergraph(6, [[0, 1, 2], [3, 4, 5]])
    r = exact_bisection(hg, 0.0)
    assert r.best_cut == 0
    assert r.best_assignment[0] == r.best_assignment[1] == r.best_assignment[2]


def test_pinned_regression_fixture():
    hg = random_hypergraph(12, 15, seed=2024, max_net_size=4)
    r = exact_bisection(hg, 0.03)
    assert r.best_cut == brute_min_cut(hg, 0.03)
    assert r.best_cut == 8


def test_matches_brute_force():
    for seed in range(15):
        hg = random_hypergraph(9, 12, seed=seed, max_net_weight=3, max_vertex_weight=2)
        r = exact_bisection(hg, 0.1)
        assert r.best_cut == brute_min_cut(hg, 0.1)


def test_size_limit():
    with pytest.raises(ValueError):
        exact_bisection(random_hypergraph(17, 10, seed=0), 0.1)


def test_infeasible_reported():
    hg = Hypergraph(2, [[0, 1]], vertex_weights=[1, 5])
    assert not exact_bisection(hg, 0.0).feasible


def test_gain_examples():
    hg = Hypergraph(2, [[0, 1]])
    assert recompute_gain(hg, [0, 1], 0) == 1
    assert recompute_gain(hg, [0, 0], 0) == -1
    hg3 = Hypergraph(3, [[0, 1, 2]])
    assert recompute_gain(hg3, [0, 0, 1], 0) == 0


def test_naive_parallel():
    hg = Hypergraph(3, [[0, 1], [1, 0], [0, 2], [0, 1]])
    assert naive_parallel_removals(hg, 0) == {1, 3}
