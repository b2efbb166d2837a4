import random

import pytest

from subconn.cutset_conn import CutsetConnectivity
from subconn.mult_graph import EdgeKey, MultiplicityDelta, MultiplicityMap


def make(cap=32, seed=0):
    conn = CutsetConnectivity(cap, seed=seed)
    return MultiplicityMap(cap, conn), conn


def test_edge_appears_once_count_positive_and_live():
    D, conn = make()
    D.add(1, 2, 1)
    assert conn.edge_pairs() == set()
    D.set_vertex_live(1, True)
    D.set_vertex_live(2, True)
    assert conn.edge_pairs() == {(1, 2)}
    D.add(2, 1, 1)
    assert D.count(1, 2) == 2
    D.apply_delta(MultiplicityDelta(1, 2, -1))
    assert conn.edge_pairs() == {(1, 2)}
    D.add(1, 2, -1)
    assert conn.edge_pairs() == set()
    assert len(D) == 0


def test_self_pairs_never_reach_gstar():
    D, conn = make()
    D.set_vertex_live(3, True)
    D.add(3, 3, 1)
    assert D.count(3, 3) == 1
    assert conn.edge_pairs() == set()
    D.add(3, 3, -1)
    D.set_vertex_live(3, False)


def test_negative_count_rejected():
    D, _ = make()
    with pytest.raises(RuntimeError):
        D.add(1, 2, -1)


def test_dump_and_keys():
    D, _ = make()
    D.add(5, 1, 1)
    D.add(1, 5, 1)
    D.add(2, 3, 1)
    assert D.dump() == "1 5 2\n2 3 1\n"
    assert EdgeKey.of(5, 1) == EdgeKey(1, 5)
    assert [k for k, _ in D.incident_keys(1)] == [EdgeKey(1, 5)]


@pytest.mark.parametrize("seed", range(5))
def test_activation_churn_matches_comprehension(seed):
    rng = random.Random(seed)
    D, conn = make(40, seed)
    counts = {}
    live = set()
    for _ in range(600):
        r = rng.random()
        if r < 0.3:
            v = rng.randrange(40)
            D.set_vertex_live(v, v not in live)
            live ^= {v}
        else:
            u, v = rng.randrange(40), rng.randrange(40)
            k = (min(u, v), max(u, v))
            if counts.get(k, 0) and rng.random() < 0.5:
                D.add(u, v, -1)
                counts[k] -= 1
            else:
                D.add(u, v, 1)
                counts[k] = counts.get(k, 0) + 1
        want = {k for k, c in counts.items() if c > 0 and k[0] != k[1] and k[0] in live and k[1] in live}
        assert D.gstar_edges() == want
        assert conn.edge_pairs() == want
        assert {(k.u, k.v): c for k, c in D.items()} == {k: c for k, c in counts.items() if c}
