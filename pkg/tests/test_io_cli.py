import json
import logging
import math

import pytest

from nhgp.bench import bench_harness, geometric_mean_cut
from nhgp.cli import EXIT_INPUT, EXIT_OK, bench_main, convert_main, main
from nhgp.generators import random_hypergraph
from nhgp.io import HgrParseError, cnf_to_hgr, load_hgr, mtx_to_hgr, parse_hgr, read_hgr, read_partition, write_hgr, write_partition


def test_plain_hgr():
    hg = parse_hgr("3 4\n1 2\n2 3 4\n1 4\n")
    assert hg.num_vertices == 4 and hg.num_nets == 3
    assert hg.e_weight == [1, 1, 1] and hg.v_weight == [1, 1, 1, 1]
    assert hg.pins(1) == [1, 2, 3]


def test_weighted_hgr():
    hg = parse_hgr("% comment\n3 4 11\n5 1 2\n1 2 3 4\n1 1 4\n1\n2\n3\n4\n")
    assert hg.e_weight[0] == 5 and hg.v_weight == [1, 2, 3, 4]


@pytest.mark.parametrize("bad", ["0", "5"])
def test_pin_out_of_range(bad):
    with pytest.raises(HgrParseError) as exc:
        parse_hgr(f"3 4\n1 2\n2 3 {bad}\n1 4\n")
    assert exc.value.line == 3


@pytest.mark.parametrize("text", ["", "3\n", "1 2 7\n1 2\n", "2 2\n1 2\n", "1 2\n\n", "1 2 1\n0 1 2\n"])
def test_malformed(text):
    with pytest.raises(HgrParseError):
        read_hgr(text)


def test_duplicates_and_single_node_nets(caplog):
    caplog.set_level(logging.WARNING, logger="nhgp")
    hf = read_hgr("3 3\n1 1 2\n3\n2 3\n")
    assert hf.duplicate_pins == 1 and "duplicate" in caplog.text
    hg, dropped = hf.to_hypergraph()
    assert dropped == 1 and hg.num_nets == 2
    assert hf.raw_hypergraph().num_nets == 3


def test_write_roundtrip():
    hg = random_hypergraph(20, 30, seed=1, max_net_weight=3, max_vertex_weight=2)
    again = parse_hgr(write_hgr(hg))
    assert again.snapshot() == hg.snapshot()


def test_partition_file(tmp_path):
    p = tmp_path / "part"
    write_partition([0, 1], p)
    assert p.read_bytes() == b"0\n1\n"
    write_partition([0, 0, 0], p)
    assert read_partition(p) == [0, 0, 0]


def test_mtx_row_net(tmp_path):
    p = tmp_path / "m.mtx"
    p.write_text("%%MatrixMarket matrix coordinate real general\n3 3 3\n1 1 1.0\n1 3 2.0\n3 2 1.0\n")
    hg = mtx_to_hgr(p)
    assert hg.num_vertices == 3 and hg.num_nets == 2
    assert sorted(hg.pins(0)) == [0, 2]


def test_cnf():
    hg = cnf_to_hgr("c x\np cnf 3 2\n1 -2 0\n-1 3 2 0\n")
    assert hg.num_vertices == 3 and hg.pins(0) == [0, 1] and sorted(hg.pins(1)) == [0, 1, 2]


def test_cli_missing_hgr(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--k", "2"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_cli_bad_file(tmp_path):
    p = tmp_path / "x.hgr"
    p.write_text("2 2\n1 9\n1 2\n")
    assert main(["--hgr", str(p), "--k", "2"]) == EXIT_INPUT
    assert main(["--hgr", str(tmp_path / "missing.hgr"), "--k", "2"]) == EXIT_INPUT


def test_cli_run(tmp_path):
    p = tmp_path / "g.hgr"
    p.write_text(write_hgr(random_hypergraph(60, 90, seed=2)))
    out, stats = tmp_path / "part", tmp_path / "stats.json"
    code = main(["--hgr", str(p), "--k", "3", "--ip-runs", "2", "--t", "30", "--verify",
                 "--output", str(out), "--stats", str(stats)])
    assert code == EXIT_OK
    blocks = read_partition(out)
    assert len(blocks) == 60 and set(blocks) == {0, 1, 2}
    rec = json.loads(stats.read_text())
    assert rec["schema"] == "nhgp.run-stats/1" and rec["k"] == 3
    assert len(rec["bisections"]) == 2 and "timings" not in rec["bisections"][0]


def test_cli_timings_flag(tmp_path):
    p = tmp_path / "g.hgr"
    p.write_text(write_hgr(random_hypergraph(30, 40, seed=2)))
    stats = tmp_path / "s.json"
    main(["--hgr", str(p), "--k", "2", "--ip-runs", "1", "--stats", str(stats), "--stats-timings"])
    assert "timings" in json.loads(stats.read_text())["bisections"][0]


def test_convert(tmp_path):
    src = tmp_path / "f.cnf"
    src.write_text("p cnf 3 2\n1 -2 0\n2 3 0\n")
    dst = tmp_path / "f.hgr"
    assert convert_main(["cnf", str(src), str(dst)]) == EXIT_OK
    hg, _, _ = load_hgr(dst)
    assert hg.num_nets == 2


def test_geometric_mean_zero_rule():
    assert geometric_mean_cut([0, 8]) == pytest.approx(math.sqrt(8))


def test_bench(tmp_path):
    (tmp_path / "a.hgr").write_text(write_hgr(random_hypergraph(40, 60, seed=1)))
    (tmp_path / "b.hgr").write_text(write_hgr(random_hypergraph(40, 60, seed=2)))
    from nhgp.partitioner import PartitionerConfig

    cfg = PartitionerConfig(t=20, ip_runs=1)
    rep = bench_harness(tmp_path, [2], [0.03], repetitions=3, config=cfg)
    assert len(rep["instances"]) == 2 and len(rep["aggregates"]) == 1
    for row in rep["instances"]:
        assert row["best_cut"] <= row["mean_cut"] and len(row["cuts"]) == 3
    single = bench_harness(tmp_path, [2], [0.03], repetitions=1, config=cfg)["instances"][0]
    assert single["mean_cut"] == single["best_cut"] == single["cuts"][0]
    report = tmp_path / "r.json"
    assert bench_main([str(tmp_path), "--repetitions", "1", "--ip-runs", "1", "--report", str(report)]) == 0
    assert json.loads(report.read_text())["aggregates"]
