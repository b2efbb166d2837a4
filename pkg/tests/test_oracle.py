import random
from collections import Counter

from subconn import SubgraphConnectivity
from subconn.oracle import (
    ReferenceState,
    bfs_connected,
    boundary,
    check_invariants,
    components_of_induced,
    walk_of,
)


def test_trivial_cases():
    assert bfs_connected({0: []}, {0}, 0, 0)
    assert boundary([(0, 1), (1, 2)], set()) == Counter()
    assert boundary([(0, 1), (1, 2), (0, 2)], {0}) == Counter({(0, 1): 1, (0, 2): 1})


def test_walk_of_fig1():
    subs = {1: [15, 2], 12: [14, 4, 10], 9: [3, 15]}
    assert walk_of([1, 12, 9], subs.get) == [2, 15, 4, 10, 14, 3, 15]


def test_components_of_induced():
    adj = {0: [1], 1: [0, 2], 2: [1], 3: [4], 4: [3]}
    assert components_of_induced(adj, [0, 1, 3, 4]) == [frozenset({0, 1}), frozenset({3, 4})]
    assert components_of_induced(adj, [0, 2]) == [frozenset({0}), frozenset({2})]


def test_reference_labels_agree_with_bfs():
    rng = random.Random(0)
    n = 50
    edges = {(min(u, v), max(u, v)) for u, v in ((rng.randrange(n), rng.randrange(n)) for _ in range(80)) if u != v}
    ref = ReferenceState(n, edges, [v for v in range(n) if rng.random() < 0.6])
    for _ in range(200):
        v = rng.randrange(n)
        ref.apply(("RV", v) if v in ref.S else ("IV", v))
        s, t = rng.randrange(n), rng.randrange(n)
        if s in ref.S and t in ref.S:
            assert ref.connected(s, t) == ref.bfs_connected(s, t)


def test_sweep_notices_tampering():
    rng = random.Random(1)
    n = 30
    edges = {(min(u, v), max(u, v)) for u, v in ((rng.randrange(n), rng.randrange(n)) for _ in range(70)) if u != v}
    sc = SubgraphConnectivity(n, edges, range(n))
    assert check_invariants(sc.live) == []
    u, v = next((k.u, k.v) for k, _ in sc.live.D.items())
    sc.live.D.counts[u + sc.live.D.n * v] += 1
    assert any("D differs" in p for p in check_invariants(sc.live))
