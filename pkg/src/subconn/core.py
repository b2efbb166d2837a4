"""Dynamic subgraph connectivity with worst-case rebuilds.

Vertices are split by degree into A (low), B (medium) and C (high).  Active
A vertices are removed and replaced by artificial structure on the graph G*
over the active B and C vertices plus one meta-vertex per high component of
G_A; G* connectivity is kept by :class:`CutsetConnectivity`.

Every vertex gets a hidden pendant neighbour so that ``m >= n``.  Pendants
are never active, so they only show up as ``+1`` on every degree and ``+n``
on ``m``; they are not materialised.
"""

from __future__ import annotations

import enum
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .adjacency import AdjacencyStructures
from .cutset_conn import CutsetConnectivity
from .errors import PreconditionError, UnknownVertexError
from .et_forest import TreeHandle
from .ga_forest import ComponentKind, GaForest
from .metering import METER
from .mult_graph import MultiplicityMap
from .path_graphs import PathGraphs

_EPS = 1e-12


class VertexClass(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"


@dataclass(frozen=True)
class Config:
    """Degree exponents and randomness settings.

    With ``m`` edges, C vertices have degree > m**(1-b), B vertices degree in
    (m**(1-a), m**(1-b)] and a component of G_A is high when its degree sum
    exceeds m**(1-c).  Defaults give m^(1/4), m^(1/2) and m^(1/4).
    """

    a: float = 0.75
    b: float = 0.5
    c: float = 0.75
    c0: int = 4
    seed: int = 0
    rebuild: bool = True

    def thresholds(self, m: int) -> tuple[float, float, float]:
        return m ** (1 - self.a), m ** (1 - self.b), m ** (1 - self.c)


INEQUALITIES = (
    "(1) spanning forest of G_A: 1/2 + (1-a) <= c",
    "(2) low-component cliques: (1-a) + 2(1-c) <= c",
    "(3) meta-vertex edges: (1-a) + b <= c",
    "(4) B vertex update: (1-b) + (1-c) <= c",
    "(5) size of G*: a <= c",
)


def validate_config(cfg: Config) -> list[str]:
    """Return the trade-off inequalities ``cfg`` violates (empty when valid)."""
    a, b, c = cfg.a, cfg.b, cfg.c
    lhs = (0.5 + (1 - a), (1 - a) + 2 * (1 - c), (1 - a) + b, (1 - b) + (1 - c), a)
    return [name for name, x in zip(INEQUALITIES, lhs) if x > c + _EPS]


@dataclass
class Hookup:
    """Artificial edges owned by one component of G_A."""

    kind: ComponentKind
    meta: Optional[int]
    cs: list = field(default_factory=list)
    first: Optional[int] = None

    def edges(self) -> list[tuple[int, int]]:
        out = []
        cs = self.cs
        if self.kind is ComponentKind.HIGH:
            out = [(self.meta, c) for c in cs]
            if self.first is not None:
                out.append((self.meta, self.first))
        else:
            for i, x in enumerate(cs):
                for y in cs[i + 1 :]:
                    out.append((x, y))
            if self.first is not None:
                out.extend((self.first, c) for c in cs)
        return out


def _norm(e):
    u, v = e
    return (u, v) if u <= v else (v, u)


class Structure:
    """The whole structure for one value of ``m``; no rebuild logic here."""

    def __init__(self, n: int, adj: list, active: Iterable[int], cfg: Config, *, seed: int = 0,
                 m: Optional[int] = None):
        """``m`` overrides the (augmented) edge count the thresholds are taken from."""
        self.n = n
        self.cfg = cfg
        self.adj = adj
        self.m_edges = sum(len(s) for s in adj) // 2
        self.m = self.m_edges + n if m is None else m
        self.t_a, self.t_b, self.t_c = cfg.thresholds(self.m)
        self.S: set[int] = set(active)
        self.cls: list[VertexClass] = [self.classify(v) for v in range(n)]
        high_bound = int(2 * (self.m + math.sqrt(self.m) + 2) / self.t_c) + 2
        self.meta_capacity = min(n, high_bound) if cfg.rebuild else n
        self.capacity = n + self.meta_capacity
        self._meta_next = n
        self._meta_free: list[int] = []
        self.seed = seed
        self.ga = GaForest(self.t_c, seed=seed)
        self.conn = CutsetConnectivity(self.capacity, c0=cfg.c0, seed=seed + 1)
        self.D = MultiplicityMap(self.capacity, self.conn)
        self.pg = PathGraphs(self.ga.et, self._b_nbrs, self._a_nbrs, seed=seed + 2)
        self.pg.sink = self.D.apply_delta
        self.adjs = AdjacencyStructures(self.ga.et, seed=seed + 3)
        self.hook: dict[int, Hookup] = {}
        self.ga.listeners.append(self)

    # -- classification ---------------------------------------------------

    def deg(self, v: int) -> int:
        return len(self.adj[v]) + 1

    def classify(self, v: int) -> VertexClass:
        d = self.deg(v)
        if d > self.t_b:
            return VertexClass.C
        if d > self.t_a:
            return VertexClass.B
        return VertexClass.A

    def _b_nbrs(self, w):
        cls, S = self.cls, self.S
        return [x for x in self.adj[w] if cls[x] is VertexClass.B and x in S]

    def _a_nbrs(self, b):
        ga = self.ga
        return [x for x in self.adj[b] if x in ga]

    def _c_nbrs(self, v):
        cls = self.cls
        return [x for x in self.adj[v] if cls[x] is VertexClass.C]

    def _contributes(self, x, y) -> bool:
        """Does the original edge (x, y) belong to H?"""
        cx, cy = self.cls[x], self.cls[y]
        if cx is VertexClass.A or cy is VertexClass.A:
            return False
        return (cx is VertexClass.C or x in self.S) and (cy is VertexClass.C or y in self.S)

    # -- forest listener glue ---------------------------------------------

    def on_vertex_added(self, v):
        self.pg.add_vertex(v)
        for c in self._c_nbrs(v):
            self.adjs.on_a_edge_change(c, v, True)

    def on_forest_event(self, ev):
        self.pg.on_forest_event(ev)
        self.adjs.on_forest_event(ev)

    def on_vertex_removing(self, v):
        for c in self._c_nbrs(v):
            self.adjs.on_a_edge_change(c, v, False)
        self.pg.remove_vertex(v)

    # -- hookups ----------------------------------------------------------

    def _alloc_meta(self) -> int:
        if self._meta_free:
            return self._meta_free.pop()
        if self._meta_next >= self.capacity:
            raise RuntimeError("meta-vertex capacity exhausted")
        self._meta_next += 1
        return self._meta_next - 1

    def _scan_c(self, rep: int) -> list[int]:
        cls = self.cls
        out = set()
        for x in self.ga.et.vertices(rep):
            for y in self.adj[x]:
                METER.n += 1
                if cls[y] is VertexClass.C:
                    out.add(y)
        return sorted(out)

    def _is_rep(self, r: int) -> bool:
        return r in self.ga and self.ga.et.tree_of(r).rep == r

    def _retract(self, rec: Hookup) -> None:
        D = self.D
        for u, v in rec.edges():
            D.add(u, v, -1)
        if rec.meta is not None:
            D.set_vertex_live(rec.meta, False)
            self._meta_free.append(rec.meta)

    def _reconcile(self, reps: Iterable[int]) -> None:
        D = self.D
        live = []
        for r in sorted(set(reps)):
            if self._is_rep(r):
                live.append(r)
            elif r in self.hook:
                self._retract(self.hook.pop(r))
        for r in live:
            old = self.hook.get(r)
            h = TreeHandle(r)
            kind = self.ga.classify(h).kind
            if kind is ComponentKind.HIGH:
                cs = self.adjs.adjacent_c_vertices(h)
            else:
                cs = self._scan_c(r)
            first = self.pg.first_of_rep(r)
            if old is not None and old.kind is kind:
                new = Hookup(kind, old.meta, cs, first)
                before = Counter(map(_norm, old.edges()))
                after = Counter(map(_norm, new.edges()))
                for (u, v), k in (before - after).items():
                    for _ in range(k):
                        D.add(u, v, -1)
                for (u, v), k in (after - before).items():
                    for _ in range(k):
                        D.add(u, v, 1)
            else:
                if old is not None:
                    self._retract(old)
                meta = None
                if kind is ComponentKind.HIGH:
                    meta = self._alloc_meta()
                    D.set_vertex_live(meta, True)
                new = Hookup(kind, meta, cs, first)
                for u, v in new.edges():
                    D.add(u, v, 1)
            self.hook[r] = new

    def _update_first(self, r: int) -> None:
        rec = self.hook[r]
        new = self.pg.first_of_rep(r)
        old = rec.first
        if new == old:
            return
        D = self.D
        if rec.kind is ComponentKind.HIGH:
            if old is not None:
                D.add(rec.meta, old, -1)
            if new is not None:
                D.add(rec.meta, new, 1)
        else:
            for c in rec.cs:
                if old is not None:
                    D.add(old, c, -1)
                if new is not None:
                    D.add(new, c, 1)
        rec.first = new

    # -- vertex updates ---------------------------------------------------

    def _check_vertex(self, v):
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise UnknownVertexError(f"unknown vertex {v!r}")

    def insert_vertex_S(self, v: int) -> None:
        self._check_vertex(v)
        if v in self.S:
            raise PreconditionError(f"vertex {v} is already in S")
        k = self.cls[v]
        if k is VertexClass.A:
            ga = self.ga
            nbrs = [w for w in self.adj[v] if w in ga]
            reps = {ga.et.tree_of(w).rep for w in nbrs}
            self.S.add(v)
            ga.insert_vertex(v, nbrs, self.deg(v))
            reps.add(ga.et.tree_of(v).rep)
            self._reconcile(reps)
        elif k is VertexClass.B:
            self.S.add(v)
            self.D.set_vertex_live(v, True)
            self.pg.on_b_vertex_change(v, True)
            for r in sorted(self.pg.touched):
                self._update_first(r)
            for w in self.adj[v]:
                if w != v and self._contributes(v, w):
                    self.D.add(v, w, 1)
        else:
            self.S.add(v)
            self.D.set_vertex_live(v, True)

    def remove_vertex_S(self, v: int) -> None:
        self._check_vertex(v)
        if v not in self.S:
            raise PreconditionError(f"vertex {v} is not in S")
        k = self.cls[v]
        if k is VertexClass.A:
            ga = self.ga
            nbrs = list(ga.adj[v])
            reps = {ga.et.tree_of(v).rep}
            ga.delete_vertex(v)
            self.S.discard(v)
            reps.update(ga.et.tree_of(w).rep for w in nbrs)
            self._reconcile(reps)
        elif k is VertexClass.B:
            for w in self.adj[v]:
                if self._contributes(v, w):
                    self.D.add(v, w, -1)
            self.pg.on_b_vertex_change(v, False)
            for r in sorted(self.pg.touched):
                self._update_first(r)
            self.S.discard(v)
            self.D.set_vertex_live(v, False)
        else:
            self.S.discard(v)
            self.D.set_vertex_live(v, False)

    # -- edge updates -----------------------------------------------------

    def _c_join(self, x: int, skip: Optional[int]) -> None:
        """x (inactive) just became a C vertex."""
        D = self.D
        self.cls[x] = VertexClass.C
        self.adjs.add_c_vertex(x, self._a_nbrs(x))
        for r in sorted(self.adjs.trees[x]):
            rec = self.hook[r]
            if rec.kind is ComponentKind.HIGH:
                D.add(rec.meta, x, 1)
            else:
                for c in rec.cs:
                    D.add(x, c, 1)
                if rec.first is not None:
                    D.add(rec.first, x, 1)
            rec.cs.insert(_bisect(rec.cs, x), x)
        for w in self.adj[x]:
            if w != skip and self._contributes(x, w):
                D.add(x, w, 1)

    def _c_leave(self, x: int, new_cls: VertexClass) -> None:
        """x (inactive) stops being a C vertex."""
        D = self.D
        for w in self.adj[x]:
            if self._contributes(x, w):
                D.add(x, w, -1)
        for r in sorted(self.adjs.trees[x]):
            rec = self.hook[r]
            rec.cs.remove(x)
            if rec.kind is ComponentKind.HIGH:
                D.add(rec.meta, x, -1)
            else:
                for c in rec.cs:
                    D.add(x, c, -1)
                if rec.first is not None:
                    D.add(rec.first, x, -1)
        self.adjs.remove_c_vertex(x)
        self.cls[x] = new_cls

    def _reclass(self, x: int, skip: Optional[int]) -> None:
        old, new = self.cls[x], self.classify(x)
        if old is new:
            return
        if old is VertexClass.C:
            self._c_leave(x, new)
        if new is VertexClass.C:
            self._c_join(x, skip)
        self.cls[x] = new

    def _detach_both(self, u, v):
        was = [x for x in (u, v) if x in self.S]
        for x in was:
            self.remove_vertex_S(x)
        return was

    def insert_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise PreconditionError("self-loops are not allowed")
        if v in self.adj[u]:
            raise PreconditionError(f"edge ({u}, {v}) already present")
        was = self._detach_both(u, v)
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m_edges += 1
        self._reclass(u, v)
        self._reclass(v, u)
        if self._contributes(u, v):
            self.D.add(u, v, 1)
        for x in was:
            self.insert_vertex_S(x)

    def delete_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if v not in self.adj[u]:
            raise PreconditionError(f"edge ({u}, {v}) not present")
        was = self._detach_both(u, v)
        if self._contributes(u, v):
            self.D.add(u, v, -1)
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m_edges -= 1
        self._reclass(u, None)
        self._reclass(v, None)
        for x in was:
            self.insert_vertex_S(x)

    # -- queries ----------------------------------------------------------

    def equivalent(self, x: int) -> Optional[int]:
        """A G* vertex connected to x in G[S], or None when x is on an island."""
        k = self.cls[x]
        if k is not VertexClass.A:
            return x
        rep = self.ga.et.tree_of(x).rep
        rec = self.hook[rep]
        if rec.kind is ComponentKind.HIGH:
            return rec.meta
        cls, S, adj = self.cls, self.S, self.adj
        for y in sorted(self.ga.et.vertices(x)):
            for z in sorted(adj[y]):
                METER.n += 1
                if z in S and cls[z] is not VertexClass.A:
                    return z
        return None

    def connected(self, s: int, t: int) -> bool:
        self._check_vertex(s)
        self._check_vertex(t)
        if s not in self.S or t not in self.S:
            raise PreconditionError(f"query endpoints must be active: {s}, {t}")
        if s == t:
            return True
        es, et_ = self.equivalent(s), self.equivalent(t)
        if es is None or et_ is None:
            if self.cls[s] is VertexClass.A and self.cls[t] is VertexClass.A:
                return self.ga.connected_in_ga(s, t)
            return False
        return self.conn.connected(es, et_)

    def apply(self, op: tuple) -> None:
        kind = op[0]
        if kind == "IV":
            self.insert_vertex_S(op[1])
        elif kind == "RV":
            self.remove_vertex_S(op[1])
        elif kind == "IE":
            self.insert_edge(op[1], op[2])
        elif kind == "DE":
            self.delete_edge(op[1], op[2])
        else:
            raise ValueError(f"not an update: {op!r}")

    # -- preprocessing ----------------------------------------------------

    def build_steps(self) -> Iterator[None]:
        """Batch preprocessing as a generator, so it can be run in slices."""
        cls, S = self.cls, self.S
        D = self.D
        va = {v: self.deg(v) for v in S if cls[v] is VertexClass.A}
        ga_edges = [(u, w) for u in va for w in self.adj[u] if u < w and w in va]
        self.ga.load(va, ga_edges)
        yield
        for v in sorted(S):
            if cls[v] is not VertexClass.A:
                D.set_vertex_live(v, True)
        yield
        yield from self.pg.load()
        for c in range(self.n):
            if cls[c] is VertexClass.C:
                self.adjs.add_c_vertex(c, self._a_nbrs(c))
                yield
        reps = sorted({self.ga.et.tree_of(v).rep for v in va})
        for r in reps:
            self._reconcile((r,))
            yield
        for u in range(self.n):
            if cls[u] is VertexClass.A:
                continue
            for w in self.adj[u]:
                if u < w and self._contributes(u, w):
                    D.add(u, w, 1)
            yield

    def build(self) -> "Structure":
        for _ in self.build_steps():
            pass
        return self

    # -- reporting --------------------------------------------------------

    def class_counts(self) -> dict[str, int]:
        c = Counter(k.value for k in self.cls)
        return {k: c.get(k, 0) for k in "ABC"}

    def stored_entries(self) -> dict[str, int]:
        et = self.ga.et
        ga_nodes = 2 * len(et) + len(et._arc)
        pg_nodes = len(self.pg.node) + sum(len(s) for s in self.pg.sub.values())
        adj_nodes = sum(len(x) for x in self.adjs.nodes.values())
        w_nodes = len(self.conn.forest) + len(self.conn.forest._arc)
        lg = max(1, math.ceil(math.log2(self.capacity)))
        return {
            "d_keys": len(self.D),
            "tree_nodes": ga_nodes + pg_nodes + adj_nodes + w_nodes,
            "sketch_words": self.conn.stored_words(),
            "total": len(self.D) + ga_nodes + pg_nodes + adj_nodes + w_nodes
            + self.conn.stored_words() // lg**3,
        }


def _bisect(xs, x):
    lo, hi = 0, len(xs)
    while lo < hi:
        mid = (lo + hi) // 2
        if xs[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


class Phase(str, enum.Enum):
    IDLE = "idle"
    PREPROCESSING = "preprocessing"
    CATCHING_UP = "catching_up"


class SubgraphConnectivity:
    """Public structure: vertex and edge updates, connectivity in G[S].

    Once the edge count drifts by half of sqrt(m) from the value the current
    structure was built for, a shadow structure is preprocessed in slices over
    the next sqrt(m)/4 updates, then catches up on the queued updates two at a
    time over another sqrt(m)/4 updates, and finally replaces the live one.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), active: Iterable[int] = (),
                 config: Config = Config()):
        if n < 0:
            raise PreconditionError("n must be non-negative")
        self.n = n
        self.config = config
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertexError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise PreconditionError("self-loops are not allowed")
            if v in adj[u]:
                raise PreconditionError(f"parallel edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        active = list(active)
        for v in active:
            if not 0 <= v < n:
                raise UnknownVertexError(f"unknown vertex {v}")
        self.rebuilds = 0
        self.phase = Phase.IDLE
        self._generation = 0
        start = METER.n
        self.live = Structure(n, adj, active, config, seed=self._seed()).build()
        self._build_cost = max(1, METER.n - start)
        self._shadow: Optional[Structure] = None
        self._steps: Optional[Iterator[None]] = None
        self._queue: deque = deque()
        self._left = 0
        self._budget = 0

    def _seed(self) -> int:
        return self.config.seed * 1_000_003 + 7919 * self._generation

    # -- public API -------------------------------------------------------

    @property
    def S(self) -> frozenset:
        return frozenset(self.live.S)

    @property
    def m(self) -> int:
        """Current number of edges, hidden pendant edges included."""
        return self.live.m_edges + self.n

    def insert_vertex_S(self, v: int) -> None:
        self._update(("IV", v))

    def remove_vertex_S(self, v: int) -> None:
        self._update(("RV", v))

    def insert_edge(self, u: int, v: int) -> None:
        self._update(("IE", u, v))

    def delete_edge(self, u: int, v: int) -> None:
        self._update(("DE", u, v))

    def connected(self, s: int, t: int) -> bool:
        return self.live.connected(s, t)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.live.adj[u]

    # -- rebuild scheduling -----------------------------------------------

    def _update(self, op: tuple) -> None:
        self.live.apply(op)
        if self.phase is Phase.IDLE:
            if op[0] in ("IE", "DE") and self.config.rebuild:
                base = self.live.m
                if abs(self.m - base) >= 0.5 * math.sqrt(base):
                    self._start_rebuild()
            return
        self._queue.append(op)
        if self.phase is Phase.PREPROCESSING:
            self._run_build(self._budget)
            self._left -= 1
            if self._left <= 0:
                self._run_build(None)
                self.phase = Phase.CATCHING_UP
                self._left = self._span()
        else:
            for _ in range(2):
                if self._queue:
                    self._shadow.apply(self._queue.popleft())
            self._left -= 1
            if self._left <= 0:
                while self._queue:
                    self._shadow.apply(self._queue.popleft())
                self._swap()

    def _span(self) -> int:
        return max(1, math.ceil(0.25 * math.sqrt(self.live.m)))

    def _start_rebuild(self) -> None:
        self._generation += 1
        adj = [set(s) for s in self.live.adj]
        self._shadow = Structure(self.n, adj, self.live.S, self.config, seed=self._seed())
        self._steps = self._shadow.build_steps()
        self._queue.clear()
        self._left = self._span()
        self._budget = math.ceil(self._build_cost / self._left)
        self._build_start = METER.n
        self.phase = Phase.PREPROCESSING

    def _run_build(self, budget: Optional[int]) -> None:
        if self._steps is None:
            return
        start = METER.n
        for _ in self._steps:
            if budget is not None and METER.n - start >= budget:
                return
        self._steps = None
        self._build_cost = max(1, METER.n - self._build_start)

    def _swap(self) -> None:
        self.live = self._shadow
        self._shadow = None
        self.phase = Phase.IDLE
        self.rebuilds += 1

    def force_rebuild(self) -> None:
        """Rebuild immediately (used by tests and tools)."""
        self._generation += 1
        adj = [set(s) for s in self.live.adj]
        self.live = Structure(self.n, adj, self.live.S, self.config, seed=self._seed()).build()
        self.phase = Phase.IDLE
        self._shadow = None
        self._steps = None
        self._queue.clear()

    # -- reporting --------------------------------------------------------

    def stats(self) -> dict:
        st = self.live
        return {
            "n": self.n,
            "m": self.m,
            "m_snapshot": st.m,
            "classes": st.class_counts(),
            "active": len(st.S),
            "meta_vertices": sum(1 for r in st.hook.values() if r.meta is not None),
            "gstar_vertices": len(st.conn.degree),
            "gstar_edges": len(st.conn.edges),
            "phase": self.phase.value,
            "rebuilds": self.rebuilds,
            "stored": st.stored_entries(),
        }
