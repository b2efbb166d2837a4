import pytest

from subconn import Config, PreconditionError, TraceFormatError
from subconn import bench
from subconn.__main__ import main
from subconn.core import Structure, VertexClass


def test_empty_trace():
    rep = bench.run([])
    assert rep.stats == {} and rep.answers == [] and rep.ok


def test_direct_edge_query():
    ops = bench.parse_trace("IV 1\nIV 2\nIE 1 2\nQ 1 2\n")
    assert bench.run(ops, check=True).answers == [True]


def test_comments_and_errors():
    ops = bench.parse_trace("# header\n\nIV 0\n  # indented comment\nQ 0 0\n")
    assert [op.kind for op in ops] == ["IV", "Q"] and ops[1].lineno == 5
    with pytest.raises(TraceFormatError, match="line 2"):
        bench.parse_trace("IV 1\nXX 1 2\n")
    with pytest.raises(TraceFormatError, match="line 1"):
        bench.parse_trace("IE 1\n")
    with pytest.raises(TraceFormatError, match="line 1"):
        bench.parse_trace("IV -3\n")
    with pytest.raises(PreconditionError, match=r"line 3: IV 1"):
        bench.run(bench.parse_trace("IV 1\nQ 1 1\nIV 1\n"))


def test_generate_is_deterministic():
    for kind in bench.KINDS:
        a = bench.format_trace(bench.generate(kind, 60, 200, 500, seed=3))
        b = bench.format_trace(bench.generate(kind, 60, 200, 500, seed=3))
        assert a == b
    assert a != bench.format_trace(bench.generate(kind, 60, 200, 500, seed=4))


def test_generate_rejects_bad_parameters():
    with pytest.raises(ValueError):
        bench.generate("uniform", 100, 50, 10)
    with pytest.raises(ValueError):
        bench.generate("zipf", 100, 200, 10)
    with pytest.raises(ValueError):
        bench.generate("uniform", 5, 11, 10)


def query_a_share(ops, n):
    """Fraction of queries with an endpoint in class A at the time of the query."""
    edges, active, rest = bench._split_preload(ops)
    from subconn import SubgraphConnectivity

    sc = SubgraphConnectivity(n, edges, active, Config(rebuild=False))
    hit = total = 0
    for op in rest:
        if op.kind == "Q":
            total += 1
            hit += any(sc.live.cls[x] is VertexClass.A for x in op.args)
        else:
            sc._update(op.as_tuple())
    return hit / total


def test_island_heavy_targets_a_vertices():
    ops = bench.generate("island-heavy", 400, 1600, 3000, seed=1)
    assert query_a_share(ops, 400) >= 0.5


def test_uniform_class_histogram():
    ops = bench.generate("uniform", 250, 1000, 0, seed=2)
    edges, active, _ = bench._split_preload(ops)
    adj = [set() for _ in range(250)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    st = Structure(250, adj, active, Config())
    m = 1000 + 250
    want = {"A": 0, "B": 0, "C": 0}
    for v in range(250):
        d = len(adj[v]) + 1
        want["C" if d > m ** 0.5 else "B" if d > m ** 0.25 else "A"] += 1
    assert st.class_counts() == want


def test_failure_burst_has_hubs():
    ops = bench.generate("failure-burst", 400, 1600, 0, seed=1)
    rep = bench.run(ops)
    assert rep.stats == {}
    edges, active, _ = bench._split_preload(ops)
    deg = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    assert max(deg.values()) + 1 > (1600 + 400) ** 0.5


def test_checked_generated_trace():
    ops = bench.generate("uniform", 200, 800, 10_000, seed=5)
    rep = bench.run(ops, Config(seed=5), check=True)
    assert rep.mismatches == [] and rep.false_positives == 0
    assert rep.stats["Q"].count > 4000


def test_report_is_deterministic():
    ops = bench.generate("failure-burst", 100, 400, 1500, seed=9)
    a = bench.run(ops, Config(seed=1))
    b = bench.run(ops, Config(seed=1))
    assert a.answers == b.answers
    assert {k: (s.count, s.total_elem, s.max_elem) for k, s in a.stats.items()} == {
        k: (s.count, s.total_elem, s.max_elem) for k, s in b.stats.items()
    }


def test_invariant_stride():
    ops = bench.generate("failure-burst", 60, 240, 400, seed=2)
    rep = bench.run(ops, check=True, invariant_stride=7)
    assert rep.ok


def test_scaling_single_size():
    rows = bench.scaling([1024], 300, seed=0)
    assert {r["m"] for r in rows} == {1024}
    assert {"vertex", "Q", "space"} <= {r["op_kind"] for r in rows}
    text = bench.rows_to_csv(rows)
    assert text.splitlines()[0] == "m,op_kind,count,mean_elem,max_elem,mean_ns,max_ns"
    assert "\r" not in text
    with pytest.raises(ValueError):
        bench.scaling([2048, 1024])


def test_cli_round_trip(tmp_path, capsys):
    trace = tmp_path / "t.txt"
    assert main(["gen", "--kind", "uniform", "--n", "40", "--m", "80", "--ops", "300",
                 "--seed", "1", "--out", str(trace)]) == 0
    assert main(["run", "--trace", str(trace), "--check", "--invariant-stride", "10"]) == 0
    out = capsys.readouterr().out
    assert "mismatches=0" in out
    csv = tmp_path / "s.csv"
    assert main(["scale", "--sizes", "1024", "2048", "--ops", "200", "--out", str(csv)]) == 0
    assert csv.read_text().startswith("m,op_kind,")


def test_cli_exit_codes(tmp_path, monkeypatch):
    bad = tmp_path / "bad.txt"
    bad.write_text("IV 1\nQ 1\n")
    assert main(["run", "--trace", str(bad)]) == 2
    good = tmp_path / "good.txt"
    good.write_text("IV 0\nIV 1\nIE 0 1\nQ 0 1\n")
    monkeypatch.setattr(Structure, "connected", lambda self, s, t: False)
    assert main(["run", "--trace", str(good), "--check"]) == 1
