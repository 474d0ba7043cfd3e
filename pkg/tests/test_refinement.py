import random

import pytest

from fuzz_helpers import CacheFuzzer, cache_errors, run_cache_fuzz, run_repair_check
from nhgp.generators import random_hypergraph
from nhgp.hypergraph import Hypergraph
from nhgp.oracle import recompute_cut, recompute_gain
from nhgp.partition import PartitionState
from nhgp.refinement import GainCache, LocalizedFM, RefinementConfig, gain, repair_cache_after_uncontraction


def test_gain_examples():
    hg = Hypergraph(3, [[0, 1]])
    assert gain(PartitionState(hg, [0, 1, 0]), 0) == 1
    assert gain(PartitionState(hg, [0, 0, 0]), 0) == -1
    hg3 = Hypergraph(3, [[0, 1, 2]])
    assert gain(PartitionState(hg3, [0, 0, 1]), 0) == 0


def test_gain_matches_oracle():
    rng = random.Random(0)
    for seed in range(10):
        hg = random_hypergraph(30, 50, seed=seed, max_net_weight=4)
        a = [rng.randrange(2) for _ in range(30)]
        s = PartitionState(hg, a)
        for v in range(30):
            assert gain(s, v) == recompute_gain(hg, a, v)


def test_cache_move_and_rollback():
    c = GainCache(4)
    c.insert(0, 3)
    c.insert(1, 1)
    c.checkpoint()
    c.apply_move(0, 3)
    assert c[0] == -3
    c.add(1, 2)
    c.insert(2, 7)
    c.rollback()
    assert c[0] == 3 and c[1] == 1 and 2 not in c


def test_pair_fully_internal_no_moves():
    hg = Hypergraph(4, [[0, 1], [2, 3]])
    s = PartitionState(hg, [0, 0, 1, 1])
    fm = LocalizedFM(s)
    fm.local_search(0, 1)
    assert fm.stats.moves == 0 and s.cut == 0


def test_single_cut_net_fixed():
    hg = Hypergraph(4, [[0, 1], [1, 2, 3]])
    s = PartitionState(hg, [0, 1, 1, 1], max_weights=(4, 4), perfect_weights=(2, 2))
    fm = LocalizedFM(s)
    fm.local_search(0, 1)
    assert s.cut == 0


def test_worsening_pass_rolled_back():
    # every move from this state increases the cut
    hg = Hypergraph(4, [[0, 1], [2, 3], [1, 2]], net_weights=[5, 5, 1])
    s = PartitionState(hg, [0, 0, 1, 1], max_weights=(4, 4), perfect_weights=(2, 2))
    fm = LocalizedFM(s, RefinementConfig(c=1, record_passes=True))
    assign = s.assignment()
    fm.local_search(1, 2)
    assert s.assignment() == assign and s.cut == 1
    assert fm.stats.log[0].kept == 0
    for v in range(4):
        assert fm.cache[v] is None or fm.cache[v] == gain(s, v)


def test_activation_uses_cache():
    hg = random_hypergraph(20, 30, seed=1)
    s = PartitionState(hg, [v % 2 for v in range(20)])
    fm = LocalizedFM(s)
    fm.activate(3)
    assert fm.stats.gain_evaluations == 1 and fm.cache[3] == gain(s, 3)
    fm._deactivate(3)
    fm.activate(3)
    assert fm.stats.gain_evaluations == 1


def test_repair_manual_case():
    # u=0 and v=1 share net 0 (size 3), v alone has net 1, u alone has net 2
    hg = Hypergraph(5, [[0, 1, 2], [1, 3], [0, 4]])
    m = hg.contract(0, 1)
    s = PartitionState(hg, [0, -1, 0, 1, 1])
    cache = GainCache(5)
    cache.values[0] = gain(s, 0)
    hg.uncontract(m)
    s.on_uncontract(0, 1)
    repair_cache_after_uncontraction(s, cache, 0, 1)
    assert cache[0] == gain(s, 0) and cache[1] == gain(s, 1)


def test_repair_uncached_leaves_both_uncached():
    hg = Hypergraph(3, [[0, 1], [1, 2]])
    m = hg.contract(0, 1)
    s = PartitionState(hg, [0, -1, 1])
    cache = GainCache(3)
    hg.uncontract(m)
    s.on_uncontract(0, 1)
    repair_cache_after_uncontraction(s, cache, 0, 1)
    assert cache[0] is None and cache[1] is None


def test_repair_small_scale():
    done, bad = run_repair_check(500, seed=77)
    assert done == 500 and not bad


def test_cache_fuzz_small_scale():
    events, bad = run_cache_fuzz(1500, seed=55)
    assert events == 1500 and not bad


def test_fuzz_detects_broken_repair(monkeypatch):
    def naive_copy(state, cache, u, v):
        cache.values[v] = cache.values[u]

    monkeypatch.setattr("fuzz_helpers.repair_cache_after_uncontraction", naive_copy)
    _, bad = run_cache_fuzz(800, seed=3)
    assert bad


def test_fuzz_checks_many_entries():
    fz = CacheFuzzer(1)
    checked = 0
    for _ in range(200):
        fz.step()
        checked += sum(1 for v in fz.hg.vertices() if fz.cache[v] is not None)
        assert not cache_errors(fz.state, fz.cache)
    assert checked > 500


@pytest.mark.parametrize("locking", [True, False])
def test_passes_never_worsen(locking):
    from fuzz_helpers import coarse_instance

    for seed in range(8):
        hg, journal, state, rng = coarse_instance(seed)
        fm = LocalizedFM(state, RefinementConfig(c=20, use_locking=locking, record_passes=True), rng)
        for level in reversed(journal.levels):
            for rec in reversed(level.removed):
                hg.restore_removed_nets([rec])
                state.on_net_restored(rec.net, rec.representative_net)
            u, v = hg.uncontract(level.memento)
            state.on_uncontract(u, v)
            repair_cache_after_uncontraction(state, fm.cache, u, v)
            fm.local_search(u, v)
        assert state.cut == recompute_cut(hg, state.assignment())
        assert all(p.cut_after <= p.cut_before for p in fm.stats.log)
        assert not cache_errors(state, fm.cache)


def test_locking_does_not_change_search():
    # locked nets cannot alter the gain of any vertex still free to move,
    # so runs with and without locking make the same moves
    from fuzz_helpers import coarse_instance

    for seed in range(6):
        results = []
        for locking in (True, False):
            hg, journal, state, rng = coarse_instance(seed)
            fm = LocalizedFM(state, RefinementConfig(c=30, use_locking=locking, record_passes=True), rng)
            for level in reversed(journal.levels):
                for rec in reversed(level.removed):
                    hg.restore_removed_nets([rec])
                    state.on_net_restored(rec.net, rec.representative_net)
                u, v = hg.uncontract(level.memento)
                state.on_uncontract(u, v)
                repair_cache_after_uncontraction(state, fm.cache, u, v)
                fm.local_search(u, v)
            results.append((state.assignment(), state.cut, fm.stats.log))
        assert results[0] == results[1]
