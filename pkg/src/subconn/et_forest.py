"""Dynamic forests as Euler tours stored in treaps.

Each tree edge {v, w} is kept as the two arcs (v, w) and (w, v) and each
vertex as a self-loop (v, v).  The tour of a tree, broken at some place, is
the in-order sequence of a treap whose nodes carry:

* ``loops``: number of self-loops below (the "has a self-loop" bit and more),
* ``minv``: smallest vertex id among those self-loops,
* ``wsum``: sum of per-vertex weights,
* ``agg``: XOR of per-vertex sketch integers (only used by the witness forest).

Alongside, an *order tree* per tree holds only the self-loop vertices in
tour order; ranks in it give the Euler-tour order of vertices.

Tour shape after updates is part of the contract, since the path graph and
adjacency structures mirror it:

* ``link(u, v)``: the tour of v's tree is rotated to start at v and is
  spliced right after u's self-loop.  The order of u's tree is unchanged.
* ``cut``: for the tour <L1, (x,y), L2, (y,x), L3>, the two new tours are
  <L1, L3> (the *outer* tree, containing x) and <L2> (the *inner* tree,
  containing y).  :class:`CutInfo` reports both plus the *seam*, the first
  vertex of L3 (or ``None``), so order-keyed structures can be split.
"""

from __future__ import annotations

import random
from typing import Iterator, NamedTuple, Optional

from . import _treap as tp
from ._treap import TreapNode
from .errors import (
    AlreadyConnectedError,
    DifferentTreesError,
    NotATreeEdgeError,
    PreconditionError,
    StaleHandleError,
    UnknownVertexError,
)
from .metering import METER

_INF = float("inf")


class TreeHandle(NamedTuple):
    """A tree named by its smallest vertex; stale once the tree changes shape."""

    rep: int


class CutInfo(NamedTuple):
    outer: int
    inner: int
    seam: Optional[int]


class _EtNode(TreapNode):
    __slots__ = ("tail", "head", "isloop", "w", "own", "loops", "minv", "wsum", "agg")

    def __init__(self, prio, tail, head, w=0):
        super().__init__(prio)
        self.tail = tail
        self.head = head
        self.isloop = 1 if tail == head else 0
        self.w = w
        self.own = 0
        self.loops = self.isloop
        self.minv = tail if self.isloop else _INF
        self.wsum = w
        self.agg = 0

    def pull(self):
        METER.n += 1
        s = 1
        loops = self.isloop
        minv = self.tail if loops else _INF
        wsum = self.w
        agg = self.own
        l = self.left
        if l is not None:
            s += l.size
            loops += l.loops
            if l.minv < minv:
                minv = l.minv
            wsum += l.wsum
            if l.agg:
                agg ^= l.agg
        r = self.right
        if r is not None:
            s += r.size
            loops += r.loops
            if r.minv < minv:
                minv = r.minv
            wsum += r.wsum
            if r.agg:
                agg ^= r.agg
        self.size = s
        self.loops = loops
        self.minv = minv
        self.wsum = wsum
        self.agg = agg

    def __repr__(self):
        return f"<arc {self.tail}->{self.head}>"


class _SketchNode(_EtNode):
    """Node for forests that only need sizes and sketches (no min, no weight)."""

    __slots__ = ()

    def pull(self):
        METER.n += 1
        s = 1
        loops = self.isloop
        agg = self.own
        l = self.left
        if l is not None:
            s += l.size
            loops += l.loops
            if l.agg:
                agg ^= l.agg
        r = self.right
        if r is not None:
            s += r.size
            loops += r.loops
            if r.agg:
                agg ^= r.agg
        self.size = s
        self.loops = loops
        self.agg = agg


class _OrdNode(TreapNode):
    __slots__ = ("v",)

    def __init__(self, prio, v):
        super().__init__(prio)
        self.v = v


def _first_loop(t):
    while t is not None:
        l = t.left
        if l is not None and l.loops:
            t = l
        elif t.isloop:
            return t
        else:
            t = t.right
    return None


def _last_loop(t):
    while t is not None:
        r = t.right
        if r is not None and r.loops:
            t = r
        elif t.isloop:
            return t
        else:
            t = t.left
    return None


class EtForest:
    """Euler-tour forest with optional order trees and sketch aggregation."""

    def __init__(self, *, order_trees: bool = True, track_min: bool = True, seed: int = 0):
        """``track_min=False`` drops the min-vertex and weight aggregates; tree
        handles, weights and ``min_vertex`` are then unavailable."""
        self._cls = _EtNode if track_min else _SketchNode
        self._rng = random.Random(seed)
        self._loop: dict[int, _EtNode] = {}
        self._arc: dict[tuple[int, int], _EtNode] = {}
        self._ord: Optional[dict[int, _OrdNode]] = {} if order_trees else None

    # -- vertices ---------------------------------------------------------

    def __contains__(self, v) -> bool:
        return v in self._loop

    def __len__(self) -> int:
        return len(self._loop)

    def vertices_all(self):
        return self._loop.keys()

    def add_vertex(self, v: int, weight: int = 0) -> None:
        if v in self._loop:
            raise PreconditionError(f"vertex {v} already in forest")
        rnd = self._rng.random
        self._loop[v] = self._cls(rnd(), v, v, weight)
        if self._ord is not None:
            self._ord[v] = _OrdNode(rnd(), v)

    def remove_vertex(self, v: int) -> None:
        nd = self._node(v)
        if nd.parent is not None or nd.left is not None or nd.right is not None:
            raise PreconditionError(f"vertex {v} is not a singleton tree")
        del self._loop[v]
        if self._ord is not None:
            del self._ord[v]

    def _node(self, v) -> _EtNode:
        try:
            return self._loop[v]
        except KeyError:
            raise UnknownVertexError(f"vertex {v} not in forest") from None

    def set_weight(self, v: int, weight: int) -> None:
        x = self._node(v)
        x.w = weight
        while x is not None:
            x.pull()
            x = x.parent

    def weight(self, v: int) -> int:
        return self._node(v).w

    def xor_sketch(self, v: int, delta: int) -> int:
        """XOR ``delta`` into v's own sketch and every aggregate above it.

        Returns the number of aggregates touched.
        """
        x = self._node(v)
        x.own ^= delta
        k = 0
        while x is not None:
            x.agg ^= delta
            x = x.parent
            k += 1
        return k

    def own_sketch(self, v: int) -> int:
        return self._node(v).own

    # -- trees ------------------------------------------------------------

    def _root(self, v):
        return tp.root_of(self._node(v))

    def connected(self, u: int, v: int) -> bool:
        return self._root(u) is self._root(v)

    def tree_of(self, v: int) -> TreeHandle:
        return TreeHandle(self._root(v).minv)

    def _handle_root(self, h: TreeHandle):
        nd = self._loop.get(h.rep)
        if nd is None:
            raise StaleHandleError(f"stale tree handle {h}")
        r = tp.root_of(nd)
        if r.minv != h.rep:
            raise StaleHandleError(f"stale tree handle {h}")
        return r

    def is_live(self, h: TreeHandle) -> bool:
        nd = self._loop.get(h.rep)
        return nd is not None and tp.root_of(nd).minv == h.rep

    def min_vertex(self, h: TreeHandle) -> int:
        return self._handle_root(h).minv

    def aggregate_weight(self, h: TreeHandle) -> int:
        return self._handle_root(h).wsum

    def component_weight(self, v: int) -> int:
        return self._root(v).wsum

    def tree_size(self, v: int) -> int:
        """Number of vertices in v's tree."""
        return self._root(v).loops

    def tree_sketch(self, v: int) -> int:
        return self._root(v).agg

    def first_last(self, h: TreeHandle) -> tuple[int, int]:
        r = self._handle_root(h)
        return _first_loop(r).tail, _last_loop(r).tail

    def vertices(self, v: int) -> Iterator[int]:
        """Vertices of v's tree in tour order."""
        if self._ord is not None:
            for nd in tp.iter_nodes(tp.root_of(self._ord[v])):
                yield nd.v
        else:
            for nd in tp.iter_nodes(self._root(v)):
                if nd.isloop:
                    yield nd.tail

    def tour(self, v: int) -> list[tuple[int, int]]:
        """Arcs of v's tree in stored order (self-loops included)."""
        return [(nd.tail, nd.head) for nd in tp.iter_nodes(self._root(v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._arc

    def edges(self) -> Iterator[tuple[int, int]]:
        for (u, v) in self._arc:
            if u < v:
                yield (u, v)

    # -- ordering ---------------------------------------------------------

    def position(self, v: int) -> int:
        """Rank of v in its tree's Euler-tour vertex order."""
        if self._ord is None:
            raise PreconditionError("forest built without order trees")
        return tp.rank(self._ord[v])

    def tour_compare(self, u: int, v: int) -> int:
        """-1, 0 or 1 as u is before, equal to, or after v in tour order."""
        if self._ord is None:
            raise PreconditionError("forest built without order trees")
        if u not in self._ord:
            raise UnknownVertexError(f"vertex {u} not in forest")
        if v not in self._ord:
            raise UnknownVertexError(f"vertex {v} not in forest")
        if u == v:
            return 0
        ou, ov = self._ord[u], self._ord[v]
        if tp.root_of(ou) is not tp.root_of(ov):
            raise DifferentTreesError(f"{u} and {v} are in different trees")
        ru, rv = tp.rank(ou), tp.rank(ov)
        return -1 if ru < rv else 1

    # -- link / cut -------------------------------------------------------

    def link(self, u: int, v: int) -> None:
        nu, nv = self._node(u), self._node(v)
        if tp.root_of(nu) is tp.root_of(nv):
            raise AlreadyConnectedError(f"{u} and {v} already connected")
        rnd = self._rng.random
        a_uv = self._cls(rnd(), u, v)
        a_vu = self._cls(rnd(), v, u)
        self._arc[(u, v)] = a_uv
        self._arc[(v, u)] = a_vu
        d, rest = tp.split_before(nv)
        rot = tp.join(rest, d)
        left, right = tp.split_after(nu)
        tp.join_all(left, a_uv, rot, a_vu, right)
        if self._ord is not None:
            ou, ov = self._ord[u], self._ord[v]
            d, rest = tp.split_before(ov)
            rot = tp.join(rest, d)
            left, right = tp.split_after(ou)
            tp.join_all(left, rot, right)

    def cut(self, u: int, v: int) -> CutInfo:
        a1 = self._arc.get((u, v))
        if a1 is None:
            raise NotATreeEdgeError(f"({u}, {v}) is not a tree edge")
        a2 = self._arc[(v, u)]
        if tp.rank(a1) > tp.rank(a2):
            a1, a2 = a2, a1
        x, y = a1.tail, a1.head
        l1, rest = tp.split_before(a1)
        _, rest = tp.split(rest, 1)
        l2, rest = tp.split_before(a2)
        _, l3 = tp.split(rest, 1)
        seam_nd = _first_loop(l3)
        seam = seam_nd.tail if seam_nd is not None else None
        if self._ord is not None:
            a = _first_loop(l2).tail
            b = _last_loop(l2).tail
            o1, o_rest = tp.split_before(self._ord[a])
            _, o3 = tp.split_after(self._ord[b])
            tp.join(o1, o3)
        tp.join(l1, l3)
        del self._arc[(u, v)]
        del self._arc[(v, u)]
        return CutInfo(outer=x, inner=y, seam=seam)

    # -- bulk loading -----------------------------------------------------

    def load_tree(self, adjacency: dict[int, list[int]], root: int) -> None:
        """Install a whole tree from its adjacency lists (vertices already added as singletons)."""
        seq: list[_EtNode] = []
        order: list[int] = []
        rnd = self._rng.random
        stack = [(root, None, iter(adjacency.get(root, ())))]
        seq.append(self._loop[root])
        order.append(root)
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue
                a = self._cls(rnd(), v, w)
                self._arc[(v, w)] = a
                seq.append(a)
                seq.append(self._loop[w])
                order.append(w)
                stack.append((w, v, iter(adjacency.get(w, ()))))
                break
            else:
                stack.pop()
                if parent is not None:
                    a = self._cls(rnd(), v, parent)
                    self._arc[(v, parent)] = a
                    seq.append(a)
        tp.build(seq)
        if self._ord is not None:
            tp.build([self._ord[w] for w in order])
