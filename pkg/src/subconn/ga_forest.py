"""Spanning forest of the subgraph induced by the active low-degree vertices.

Stands in for a worst-case deterministic connectivity structure: the forest
lives in an :class:`EtForest` and a vertex deletion searches replacement
edges by scanning the non-tree edges of the smaller pieces.  Every link or
cut is delivered synchronously to the registered listeners, right after the
Euler-tour forest has applied it, and is also returned to the caller.
"""

from __future__ import annotations

import enum
from typing import Iterable, NamedTuple, Optional, Protocol

from .errors import PreconditionError, UnknownVertexError
from .et_forest import CutInfo, EtForest, TreeHandle
from .metering import METER


class ComponentKind(enum.Enum):
    LOW = "low"
    HIGH = "high"


class ComponentClass(NamedTuple):
    kind: ComponentKind
    degree: int


class ForestEvent(NamedTuple):
    kind: str  # "link" or "cut"
    u: int
    v: int
    # representatives (smallest vertex) of the trees involved, before the event
    before: tuple
    cut: Optional[CutInfo] = None


class ForestListener(Protocol):
    def on_vertex_added(self, v: int) -> None: ...

    def on_forest_event(self, ev: ForestEvent) -> None: ...

    def on_vertex_removing(self, v: int) -> None: ...


class GaForest:
    def __init__(self, high_threshold: float, *, seed: int = 0):
        self.high_threshold = high_threshold
        self.et = EtForest(order_trees=True, seed=seed)
        self.adj: dict[int, set[int]] = {}
        self.tree_adj: dict[int, set[int]] = {}
        self.listeners: list = []

    def __contains__(self, v) -> bool:
        return v in self.adj

    def vertices(self):
        return self.adj.keys()

    def _emit(self, ev: ForestEvent) -> ForestEvent:
        for lst in self.listeners:
            lst.on_forest_event(ev)
        return ev

    def _link(self, u: int, v: int) -> ForestEvent:
        # v's tree is spliced into u's
        et = self.et
        before = (et.tree_of(u).rep, et.tree_of(v).rep)
        et.link(u, v)
        self.tree_adj[u].add(v)
        self.tree_adj[v].add(u)
        return self._emit(ForestEvent("link", u, v, before))

    def _cut(self, u: int, v: int) -> ForestEvent:
        et = self.et
        before = (et.tree_of(u).rep,)
        info = et.cut(u, v)
        self.tree_adj[u].discard(v)
        self.tree_adj[v].discard(u)
        return self._emit(ForestEvent("cut", u, v, before, info))

    # -- updates ----------------------------------------------------------

    def insert_vertex(self, v: int, neighbors_in_va: Iterable[int], weight: int = 0) -> list[ForestEvent]:
        if v in self.adj:
            raise PreconditionError(f"vertex {v} already in G_A")
        nbrs = set(neighbors_in_va)
        for w in nbrs:
            if w not in self.adj:
                raise UnknownVertexError(f"neighbor {w} of {v} is not in G_A")
        self.et.add_vertex(v, weight)
        self.adj[v] = nbrs
        self.tree_adj[v] = set()
        for w in nbrs:
            self.adj[w].add(v)
        for lst in self.listeners:
            lst.on_vertex_added(v)
        events = []
        for w in sorted(nbrs):
            METER.n += 1
            if not self.et.connected(v, w):
                events.append(self._link(w, v))
        return events

    def delete_vertex(self, v: int) -> list[ForestEvent]:
        if v not in self.adj:
            raise UnknownVertexError(f"vertex {v} not in G_A")
        events = []
        pieces = sorted(self.tree_adj[v])
        for w in pieces:
            events.append(self._cut(v, w))
        for w in self.adj[v]:
            self.adj[w].discard(v)
        for lst in self.listeners:
            lst.on_vertex_removing(v)
        del self.adj[v]
        del self.tree_adj[v]
        self.et.remove_vertex(v)
        events.extend(self._reconnect(pieces))
        return events

    def _reconnect(self, reps: list[int]) -> list[ForestEvent]:
        """Relink the pieces a deletion left behind, smallest piece first."""
        et = self.et
        events = []
        open_reps = list(reps)
        while len(open_reps) >= 2:
            rep = min(open_reps, key=lambda r: (et.tree_size(r), r))
            open_reps.remove(rep)
            found = None
            for x in sorted(et.vertices(rep)):
                for y in sorted(self.adj[x]):
                    METER.n += 1
                    if not et.connected(x, y):
                        found = (x, y)
                        break
                if found:
                    break
            if found is not None:
                x, y = found
                events.append(self._link(y, x))
        return events

    def set_weight(self, v: int, weight: int) -> None:
        self.et.set_weight(v, weight)

    # -- queries ----------------------------------------------------------

    def _require(self, v):
        if v not in self.adj:
            raise UnknownVertexError(f"vertex {v} not in G_A")

    def connected_in_ga(self, u: int, v: int) -> bool:
        self._require(u)
        self._require(v)
        return self.et.connected(u, v)

    def component_of(self, v: int) -> TreeHandle:
        self._require(v)
        return self.et.tree_of(v)

    def classify(self, h: TreeHandle) -> ComponentClass:
        deg = self.et.aggregate_weight(h)
        kind = ComponentKind.HIGH if deg > self.high_threshold else ComponentKind.LOW
        return ComponentClass(kind, deg)

    def classify_vertex(self, v: int) -> ComponentClass:
        deg = self.et.component_weight(v)
        kind = ComponentKind.HIGH if deg > self.high_threshold else ComponentKind.LOW
        return ComponentClass(kind, deg)

    def forest_edges(self) -> set[tuple[int, int]]:
        return set(self.et.edges())

    # -- bulk loading -----------------------------------------------------

    def load(self, weights: dict[int, int], edges: Iterable[tuple[int, int]]) -> None:
        """Install G_A in one go; no events are emitted."""
        if self.adj:
            raise PreconditionError("load() needs an empty forest")
        for v, w in weights.items():
            self.adj[v] = set()
            self.tree_adj[v] = set()
            self.et.add_vertex(v, w)
        for u, v in edges:
            self.adj[u].add(v)
            self.adj[v].add(u)
        seen: set[int] = set()
        for r in sorted(self.adj):
            if r in seen:
                continue
            seen.add(r)
            tree: dict[int, list[int]] = {r: []}
            stack = [r]
            while stack:
                x = stack.pop()
                for y in sorted(self.adj[x]):
                    METER.n += 1
                    if y not in seen:
                        seen.add(y)
                        tree[x].append(y)
                        tree[y] = [x]
                        self.tree_adj[x].add(y)
                        self.tree_adj[y].add(x)
                        stack.append(y)
            if len(tree) > 1:
                self.et.load_tree(tree, r)
