"""Brute-force references for tests and the bench harness.

Everything here is recomputed from the plain graph (edge sets, S, degrees)
by exhaustive search; nothing reuses the trees or sketches under test.  The
invariant sweep reads the structure's state and compares it against these
recomputations.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Callable, Iterable, Mapping, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def bfs_connected(adj: Mapping[int, Iterable[int]], S, s: int, t: int) -> bool:
    """Is there an s-t path using only vertices of S?"""
    if s == t:
        return True
    if s not in S or t not in S:
        return False
    seen = {s}
    q = deque([s])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y in S and y not in seen:
                if y == t:
                    return True
                seen.add(y)
                q.append(y)
    return False


def components_of_induced(adj: Mapping[int, Iterable[int]], vertices: Iterable[int]) -> list[frozenset]:
    """Connected components of the subgraph induced by ``vertices``, sorted by min."""
    vs = set(vertices)
    seen: set = set()
    out = []
    for r in sorted(vs):
        if r in seen:
            continue
        comp = {r}
        q = deque([r])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y in vs and y not in comp:
                    comp.add(y)
                    q.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


def labels_of_edges(n: int, edges: Iterable[tuple[int, int]]) -> np.ndarray:
    """Component label per vertex in ``range(n)`` (scipy connected_components)."""
    es = list(edges)
    if es:
        r, c = np.array(es, dtype=np.int64).T
    else:
        r = c = np.zeros(0, dtype=np.int64)
    g = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
    return connected_components(g, directed=False)[1]


def walk_of(tour: Iterable[int], b_neighbors: Callable[[int], Iterable[int]]) -> list[int]:
    """Concatenate the sorted B-neighbour lists of the tree's vertices in tour order."""
    out: list[int] = []
    for w in tour:
        out.extend(sorted(b_neighbors(w)))
    return out


def boundary(edges: Iterable[tuple[int, int]], X) -> Counter:
    """Edges (as a multiset of sorted pairs) with exactly one endpoint in X."""
    X = set(X)
    return Counter(tuple(sorted(e)) for e in edges if (e[0] in X) != (e[1] in X))


def _pair(u, v):
    return (u, v) if u <= v else (v, u)


class ReferenceState:
    """Plain mirror of (G, S) answering queries from G[S] component labels.

    Edges are also kept in two numpy columns (swap-remove on deletion) so the
    labels can be recomputed with one vectorised pass after each update.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), active: Iterable[int] = ()):
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self._pos: dict[tuple[int, int], int] = {}
        self._ends = np.zeros((16, 2), dtype=np.int64)
        for u, v in edges:
            self._add(u, v)
        self.act = np.zeros(n, dtype=bool)
        self.S: set[int] = set()
        for v in active:
            self.S.add(v)
            self.act[v] = True
        self._labels: Optional[np.ndarray] = None

    @property
    def E(self) -> set:
        return set(self._pos)

    def _add(self, u, v):
        e = _pair(u, v)
        if e in self._pos:
            return
        self.adj[u].add(v)
        self.adj[v].add(u)
        k = len(self._pos)
        if k == len(self._ends):
            self._ends = np.concatenate([self._ends, np.zeros_like(self._ends)])
        self._ends[k] = e
        self._pos[e] = k

    def _remove(self, u, v):
        e = _pair(u, v)
        k = self._pos.pop(e, None)
        if k is None:
            return
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        last = len(self._pos)
        if k != last:
            moved = (int(self._ends[last, 0]), int(self._ends[last, 1]))
            self._ends[k] = self._ends[last]
            self._pos[moved] = k

    def apply(self, op: tuple) -> None:
        k = op[0]
        if k == "IV":
            self.S.add(op[1])
            self.act[op[1]] = True
        elif k == "RV":
            self.S.discard(op[1])
            self.act[op[1]] = False
        elif k == "IE":
            self._add(op[1], op[2])
        elif k == "DE":
            self._remove(op[1], op[2])
        else:
            raise ValueError(f"not an update: {op!r}")
        self._labels = None

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._pos)

    def labels(self) -> np.ndarray:
        """Component labels of G[S]; vertices outside S get label -1."""
        if self._labels is None:
            n, act = self.n, self.act
            ends = self._ends[: len(self._pos)]
            r, c = ends[:, 0], ends[:, 1]
            keep = act[r] & act[c]
            r, c = r[keep], c[keep]
            g = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
            lab = connected_components(g, directed=False)[1].astype(np.int64)
            lab[~act] = -1
            self._labels = lab
        return self._labels

    def connected(self, s: int, t: int) -> bool:
        if s == t:
            return True
        lab = self.labels()
        return bool(lab[s] >= 0 and lab[s] == lab[t])

    def bfs_connected(self, s: int, t: int) -> bool:
        return bfs_connected(self.adj, self.S, s, t)


# -- invariant sweep over a core.Structure --------------------------------


def _classes(st) -> list[str]:
    """Classes recomputed from degrees (pendant included) and the snapshot m."""
    a, b, _ = st.cfg.a, st.cfg.b, st.cfg.c
    m = st.m
    out = []
    for v in range(st.n):
        d = len(st.adj[v]) + 1
        if d > m ** (1 - b):
            out.append("C")
        elif d > m ** (1 - a):
            out.append("B")
        else:
            out.append("A")
    return out


def expected_multiplicities(st, cls: list[str], comps: list[tuple[list[int], bool, Optional[int]]]) -> Counter:
    """Recount D: original H edges, path-graph walks, then hookups.

    ``comps`` lists (tour order, is_high, meta id) per component of G_A.
    """
    S, adj = st.S, st.adj
    D: Counter = Counter()

    def present(x):
        return cls[x] == "C" or (cls[x] == "B" and x in S)

    for u in range(st.n):
        if not present(u):
            continue
        for v in adj[u]:
            if u < v and present(v):
                D[(u, v)] += 1

    def active_b(w):
        return [x for x in adj[w] if cls[x] == "B" and x in S]

    for tour, high, meta in comps:
        walk = walk_of(tour, active_b)
        for x, y in zip(walk, walk[1:]):
            D[_pair(x, y)] += 1
        first = walk[0] if walk else None
        cs = sorted({y for x in tour for y in adj[x] if cls[y] == "C"})
        if high:
            for c in cs:
                D[_pair(meta, c)] += 1
            if first is not None:
                D[_pair(meta, first)] += 1
        else:
            for i, x in enumerate(cs):
                for y in cs[i + 1 :]:
                    D[(x, y)] += 1
            if first is not None:
                for c in cs:
                    D[_pair(first, c)] += 1
    return D


def check_invariants(st, *, lemma3: bool = True) -> list[str]:
    """Sweep every structural invariant of a ``core.Structure``; returns problems."""
    bad: list[str] = []
    n, adj, S = st.n, st.adj, st.S
    cls = _classes(st)
    got = [k.value for k in st.cls]
    if got != cls:
        diff = [v for v in range(n) if got[v] != cls[v]]
        bad.append(f"class mismatch at {diff[:10]}")
        return bad

    # F_A spans G_A
    va = {v for v in S if cls[v] == "A"}
    if set(st.ga.vertices()) != va:
        bad.append("G_A vertex set differs from active A vertices")
        return bad
    et = st.ga.et
    fedges = list(et.edges())
    for u, v in fedges:
        if v not in adj[u]:
            bad.append(f"forest edge ({u},{v}) not in G")
    comps = components_of_induced(adj, va)
    if len(fedges) != len(va) - len(comps):
        bad.append("F_A is not a spanning forest (edge count)")
    fl = labels_of_edges(n, fedges)
    for comp in comps:
        if len({fl[x] for x in comp}) != 1:
            bad.append(f"F_A splits component with min {min(comp)}")
    if len({fl[min(c)] for c in comps}) != len(comps):
        bad.append("F_A merges components of G_A")
    if bad:
        return bad

    # path graphs and adjacency structures
    b_active = {v for v in S if cls[v] == "B"}
    c_set = [v for v in range(n) if cls[v] == "C"]
    infos = []
    for comp in comps:
        rep = min(comp)
        tour = list(et.vertices(rep))
        if set(tour) != comp:
            bad.append(f"tour of {rep} does not cover its component")
            continue
        exp_pt = [w for w in tour if any(x in b_active for x in adj[w])]
        if st.pg.path_tree(rep) != exp_pt:
            bad.append(f"path tree of {rep}: {st.pg.path_tree(rep)} != {exp_pt}")
        exp_walk = walk_of(tour, lambda w: [x for x in adj[w] if x in b_active])
        if st.pg.walk(rep) != exp_walk:
            bad.append(f"walk of {rep} differs from reconstruction")
        for c in c_set:
            exp = [u for u in tour if c in adj[u]]
            trees = st.adjs.trees.get(c)
            if trees is None:
                bad.append(f"C vertex {c} has no adjacency structure")
                continue
            if (rep in trees) != bool(exp) or (exp and st.adjs.sub_adjacency(c, rep) != exp):
                bad.append(f"adjacency of ({c}, {rep}) differs from edge scan")
        degsum = sum(len(adj[x]) + 1 for x in comp)
        high = degsum > st.t_c
        rec = st.hook.get(rep)
        if rec is None:
            bad.append(f"no hookup record for component {rep}")
            continue
        if (rec.meta is not None) != high:
            bad.append(f"component {rep}: high={high} but meta={rec.meta}")
        infos.append((tour, high, rec.meta))
    if set(st.adjs.trees) != set(c_set):
        bad.append("adjacency structures exist for non-C vertices")
    reps = {min(c) for c in comps}
    if set(st.hook) != reps:
        bad.append("hookup registry keys differ from component reps")
    metas = [m for _, h, m in infos if h]
    if len(set(metas)) != len(metas):
        bad.append("meta-vertex shared by two components")
    for mv in metas:
        if mv is not None and not (n <= mv < st.capacity):
            bad.append(f"meta id {mv} out of range")
    if bad:
        return bad

    # D, E(G*), and the connectivity structure
    exp_d = expected_multiplicities(st, cls, infos)
    got_d = {(k.u, k.v): c for k, c in st.D.items()}
    if got_d != dict(exp_d):
        keys = sorted(set(got_d) ^ set(exp_d) | {k for k in got_d if got_d[k] != exp_d.get(k)})
        bad.append(f"D differs from recount at {keys[:10]}")
        return bad
    live = {v for v in S if cls[v] != "A"} | set(metas)
    if st.D.live != live:
        bad.append("live G* vertex set differs")
    gstar = {k for k in exp_d if k[0] != k[1] and k[0] in live and k[1] in live}
    if st.conn.edge_pairs() != gstar:
        bad.append("E(G*) differs from the D/liveness comprehension")
    cap = st.capacity
    gl = labels_of_edges(cap, gstar)
    wl = labels_of_edges(cap, st.conn.witness_edges())
    for u, v in gstar:
        if wl[u] != wl[v]:
            bad.append(f"witness forest misses G* connectivity of ({u},{v})")
            break
    for u, v in st.conn.witness_edges():
        if _pair(u, v) not in gstar:
            bad.append(f"witness edge ({u},{v}) not in G*")
            break

    # Lemma 3
    if lemma3:
        sl = labels_of_edges(n, [(u, v) for u in S for v in adj[u] if u < v and v in S])
        bc = sorted(v for v in S if cls[v] != "A")
        seen_s: dict = {}
        seen_g: dict = {}
        for v in bc:
            a_, b_ = sl[v], gl[v]
            if seen_s.setdefault(a_, b_) != b_ or seen_g.setdefault(b_, a_) != a_:
                bad.append(f"Lemma 3 fails around vertex {v}")
                break

    # size of H
    m = max(st.m, st.m_edges + n)
    nbc = sum(1 for x in cls if x != "A")
    if nbc > 4 * m ** st.cfg.a + 1e-9:
        bad.append(f"|V_B|+|V_C| = {nbc} exceeds 4 m^a")
    if len(metas) >= 2 * m ** st.cfg.c + 1e-9 and metas:
        bad.append(f"|M| = {len(metas)} not below 2 m^c")
    return bad


def observables(st, sample_pairs: Iterable[tuple[int, int]] = ()) -> dict:
    """History-independent view of a structure, for rebuild comparisons."""
    n, S = st.n, st.S
    va = [v for v in S if st.cls[v].value == "A"]
    comps = components_of_induced(st.adj, va)
    kinds = []
    for comp in comps:
        rec = st.hook.get(min(comp))
        kinds.append((min(comp), None if rec is None else rec.kind.name))
    bc = sorted(v for v in S if st.cls[v].value != "A")
    groups: dict = {}
    for v in bc:
        for r in groups:
            if st.conn.connected(v, r):
                groups[r].append(v)
                break
        else:
            groups[v] = [v]
    return {
        "m": st.m,
        "classes": tuple(k.value for k in st.cls),
        "S": frozenset(S),
        "ga": frozenset(comps),
        "kinds": tuple(kinds),
        "metas": sum(1 for r in st.hook.values() if r.meta is not None),
        "gstar_partition": frozenset(frozenset(g) for g in groups.values()),
        "answers": tuple(st.connected(s, t) for s, t in sample_pairs),
    }
