import random
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from subconn.cutset_conn import CutsetConnectivity
from subconn.errors import PreconditionError, UnknownVertexError
from test_et_forest import dfs_components


def make(n, seed=0):
    cs = CutsetConnectivity(n, seed=seed)
    for v in range(n):
        cs.add_vertex(v)
    return cs


def test_insert_delete_returns_to_zero():
    cs = make(8)
    cs.insert_edge(2, 5)
    assert cs.forest.own_sketch(2) != 0
    cs.delete_edge(2, 5)
    assert all(cs.forest.own_sketch(v) == 0 for v in range(8))


def test_path_delete_splits_witness():
    cs = make(3)
    a, b, c = 0, 1, 2
    cs.insert_edge(a, b)
    cs.insert_edge(b, c)
    cs.delete_edge(a, b)
    assert not cs.connected(a, b)
    assert cs.connected(b, c)
    assert cs.witness_edges() == {(1, 2)}


def test_query_basics():
    cs = make(4)
    assert cs.connected(1, 1)
    assert not cs.connected(0, 3)
    with pytest.raises(UnknownVertexError):
        cs.connected(0, 99)


def test_add_remove_vertex():
    cs = CutsetConnectivity(10)
    cs.add_vertex(3)
    before = (dict(cs.degree), set(cs.edges))
    cs.add_vertex(4)
    cs.remove_isolated_vertex(4)
    assert (dict(cs.degree), set(cs.edges)) == before
    cs.add_vertex(4)
    cs.insert_edge(3, 4)
    with pytest.raises(PreconditionError):
        cs.remove_isolated_vertex(4)


def test_errors():
    cs = make(4)
    cs.insert_edge(0, 1)
    with pytest.raises(PreconditionError):
        cs.insert_edge(1, 0)
    with pytest.raises(PreconditionError):
        cs.delete_edge(2, 3)
    with pytest.raises(PreconditionError):
        cs.insert_edge(2, 2)


def test_name_encoding_roundtrip():
    cs = CutsetConnectivity(1000)
    for u, v in [(0, 1), (5, 3), (998, 999), (17, 400)]:
        assert cs.decode(cs.edge_name(u, v)) == (min(u, v), max(u, v))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_sketch_equals_boundary_bruteforce(seed):
    rng = random.Random(seed)
    n = 12
    cs = make(n, seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = rng.sample(pairs, rng.randint(0, 32))
    for u, v in edges:
        cs.insert_edge(u, v)
    subset = {v for v in range(n) if rng.random() < 0.5}
    got = reduce(lambda x, y: x ^ y, (cs.forest.own_sketch(v) for v in subset), 0)
    level0 = cs.unpack(got)[0]
    boundary = [cs.edge_name(u, v) for u, v in edges if (u in subset) != (v in subset)]
    expect = reduce(lambda x, y: x ^ y, boundary, 0)
    assert all(int(w) == expect for w in level0)
    # every level is the XOR of the sampled boundary edges
    full = cs.unpack(got)
    for i in range(cs.levels):
        for r in range(cs.reps):
            e = 0
            for name in boundary:
                if int(cs.unpack(cs.edge_sketch(name))[i, r]):
                    e ^= name
            assert int(full[i, r]) == e


def run_trace(seed, n=64, ops=300):
    rng = random.Random(seed)
    cs = make(n, seed)
    edges = set()
    ok = True
    for _ in range(ops):
        if edges and rng.random() < 0.45:
            e = rng.choice(sorted(edges))
            edges.remove(e)
            cs.delete_edge(*e)
        else:
            u, v = rng.sample(range(n), 2)
            e = (min(u, v), max(u, v))
            if e in edges:
                continue
            edges.add(e)
            cs.insert_edge(*e)
        # one-sided error: witness edges are real, and acyclic
        w = cs.witness_edges()
        assert w <= edges
        assert len(dfs_components(range(n), w)) == n - len(w)
        if dfs_components(range(n), w) != dfs_components(range(n), edges):
            ok = False
    return ok


def test_random_ops_match_dfs_for_99_percent_of_seeds():
    good = sum(run_trace(seed) for seed in range(100))
    assert good >= 99


def test_interleaved_vertices():
    rng = random.Random(9)
    cs = CutsetConnectivity(30, seed=4)
    present = set()
    edges = set()
    for _ in range(400):
        r = rng.random()
        if r < 0.2:
            v = rng.randrange(30)
            if v not in present:
                cs.add_vertex(v)
                present.add(v)
            elif not any(v in e for e in edges):
                cs.remove_isolated_vertex(v)
                present.remove(v)
        elif r < 0.7 and len(present) >= 2:
            u, v = rng.sample(sorted(present), 2)
            e = (min(u, v), max(u, v))
            if e not in edges:
                edges.add(e)
                cs.insert_edge(*e)
        elif edges:
            e = rng.choice(sorted(edges))
            edges.remove(e)
            cs.delete_edge(*e)
    assert dfs_components(present, cs.witness_edges()) == dfs_components(present, edges)
