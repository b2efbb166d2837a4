"""Path graphs of the active B vertices with respect to the trees of F_A.

For every active A vertex ``w`` its *subpath* is the sorted list of active B
neighbours.  For every tree T the *path tree* holds the tree vertices with a
non-empty subpath in Euler-tour order.  Concatenating the subpaths in that
order gives a walk; its consecutive pairs are the artificial edges, emitted
as multiplicity deltas (self-loop steps included, the multiplicity map drops
them).
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Optional

from sortedcontainers import SortedList

from . import _treap as tp
from . import tour_order as to
from .et_forest import EtForest, TreeHandle
from .ga_forest import ForestEvent
from .metering import METER
from .mult_graph import MultiplicityDelta


class PathGraphs:
    def __init__(
        self,
        et: EtForest,
        b_neighbors: Callable[[int], Iterable[int]],
        a_neighbors: Callable[[int], Iterable[int]],
        *,
        seed: int = 0,
    ):
        """``b_neighbors(w)``: active B neighbours of an A vertex;
        ``a_neighbors(b)``: neighbours of ``b`` currently in G_A."""
        self.et = et
        self._b_neighbors = b_neighbors
        self._a_neighbors = a_neighbors
        self._rng = random.Random(seed)
        self.sub: dict[int, SortedList] = {}
        self.node: dict[int, to.SeqNode] = {}
        self.ptree: dict[int, to.SeqNode] = {}
        self.sink: Optional[Callable[[MultiplicityDelta], None]] = None
        self.touched: set[int] = set()

    # -- helpers ----------------------------------------------------------

    def _emit(self, out: list) -> list:
        METER.n += len(out)
        if self.sink is not None:
            for d in out:
                self.sink(d)
        return out

    def _seams(self, seams, out):
        sub = self.sub
        for a, b, sign in seams:
            out.append(MultiplicityDelta(sub[a][-1], sub[b][0], sign))

    def _rep(self, w) -> int:
        return self.et.tree_of(w).rep

    # -- queries ----------------------------------------------------------

    def first_vertex(self, h: TreeHandle) -> Optional[int]:
        self.et.min_vertex(h)  # rejects stale handles
        root = self.ptree.get(h.rep)
        if root is None:
            return None
        return self.sub[tp.first(root).v][0]

    def first_of_rep(self, rep: int) -> Optional[int]:
        root = self.ptree.get(rep)
        if root is None:
            return None
        return self.sub[tp.first(root).v][0]

    def path_tree(self, rep: int) -> list[int]:
        return to.values(self.ptree.get(rep))

    def walk(self, rep: int) -> list[int]:
        out: list[int] = []
        for w in self.path_tree(rep):
            out.extend(self.sub[w])
        return out

    # -- A vertices entering / leaving G_A --------------------------------

    def add_vertex(self, w: int) -> list:
        """``w`` just became a singleton tree of F_A."""
        s = SortedList(self._b_neighbors(w))
        self.sub[w] = s
        out = []
        for x, y in zip(s, s[1:]):
            out.append(MultiplicityDelta(x, y, 1))
        if s:
            nd = to.SeqNode(self._rng.random(), w)
            self.node[w] = nd
            self.ptree[w] = nd
        return self._emit(out)

    def remove_vertex(self, w: int) -> list:
        """``w`` is a singleton tree about to leave F_A."""
        s = self.sub.pop(w)
        out = [MultiplicityDelta(x, y, -1) for x, y in zip(s, s[1:])]
        if w in self.node:
            del self.node[w]
            del self.ptree[w]
        return self._emit(out)

    # -- forest events ----------------------------------------------------

    def on_forest_event(self, ev: ForestEvent) -> list:
        seams: list = []
        out: list = []
        if ev.kind == "link":
            pu = self.ptree.pop(ev.before[0], None)
            pv = self.ptree.pop(ev.before[1], None)
            if pu is None and pv is None:
                return out
            root = to.merge_link(pu, pv, self.et, ev.u, seams)
            self.ptree[self._rep(ev.u)] = root
        elif ev.kind == "cut":
            p = self.ptree.pop(ev.before[0], None)
            if p is None:
                return out
            outer, inner = to.split_cut(p, self.et, ev.cut, seams)
            if outer is not None:
                self.ptree[self._rep(ev.cut.outer)] = outer
            if inner is not None:
                self.ptree[self._rep(ev.cut.inner)] = inner
        else:
            raise ValueError(f"unknown forest event {ev.kind!r}")
        self._seams(seams, out)
        return self._emit(out)

    # -- B vertices entering / leaving S ----------------------------------

    def on_b_vertex_change(self, b: int, present: bool) -> list:
        out: list = []
        self.touched = set()
        for w in sorted(self._a_neighbors(b)):
            METER.n += 1
            if present:
                self._insert_b(w, b, out)
            else:
                self._remove_b(w, b, out)
            self.touched.add(self._rep(w))
        return self._emit(out)

    def _insert_b(self, w, b, out):
        s = self.sub[w]
        if not s:
            s.add(b)
            nd = to.SeqNode(self._rng.random(), w)
            self.node[w] = nd
            rep = self._rep(w)
            seams: list = []
            self.ptree[rep] = to.insert(self.ptree.pop(rep, None), nd, self.et, seams)
            self._seams(seams, out)
            return
        i = s.bisect_left(b)
        prev = s[i - 1] if i > 0 else None
        nxt = s[i] if i < len(s) else None
        nd = self.node[w]
        if prev is not None and nxt is not None:
            out.append(MultiplicityDelta(prev, nxt, -1))
            out.append(MultiplicityDelta(prev, b, 1))
            out.append(MultiplicityDelta(b, nxt, 1))
        elif nxt is not None:
            out.append(MultiplicityDelta(b, nxt, 1))
            p = tp.predecessor(nd)
            if p is not None:
                tail = self.sub[p.v][-1]
                out.append(MultiplicityDelta(tail, nxt, -1))
                out.append(MultiplicityDelta(tail, b, 1))
        else:
            out.append(MultiplicityDelta(prev, b, 1))
            q = tp.successor(nd)
            if q is not None:
                head = self.sub[q.v][0]
                out.append(MultiplicityDelta(prev, head, -1))
                out.append(MultiplicityDelta(b, head, 1))
        s.add(b)

    def _remove_b(self, w, b, out):
        s = self.sub[w]
        if len(s) == 1:
            nd = self.node.pop(w)
            rep = self._rep(w)
            seams: list = []
            root = to.remove(nd, seams)
            # seams were computed while b was still in the subpath
            self._seams(seams, out)
            s.remove(b)
            if root is None:
                del self.ptree[rep]
            else:
                self.ptree[rep] = root
            return
        i = s.index(b)
        prev = s[i - 1] if i > 0 else None
        nxt = s[i + 1] if i + 1 < len(s) else None
        nd = self.node[w]
        if prev is not None and nxt is not None:
            out.append(MultiplicityDelta(prev, b, -1))
            out.append(MultiplicityDelta(b, nxt, -1))
            out.append(MultiplicityDelta(prev, nxt, 1))
        elif nxt is not None:
            out.append(MultiplicityDelta(b, nxt, -1))
            p = tp.predecessor(nd)
            if p is not None:
                tail = self.sub[p.v][-1]
                out.append(MultiplicityDelta(tail, b, -1))
                out.append(MultiplicityDelta(tail, nxt, 1))
        else:
            out.append(MultiplicityDelta(prev, b, -1))
            q = tp.successor(nd)
            if q is not None:
                head = self.sub[q.v][0]
                out.append(MultiplicityDelta(b, head, -1))
                out.append(MultiplicityDelta(prev, head, 1))
        s.remove(b)

    # -- bulk loading -----------------------------------------------------

    def load(self) -> Iterable[None]:
        """Build subpaths and path trees for the current forest.

        A generator so preprocessing can be sliced; yields once per tree.
        """
        et = self.et
        for w in et.vertices_all():
            self.sub[w] = SortedList(self._b_neighbors(w))
        seen: set[int] = set()
        for w in list(et.vertices_all()):
            rep = self._rep(w)
            if rep in seen:
                continue
            seen.add(rep)
            out = []
            nodes = []
            for x in et.vertices(w):
                s = self.sub[x]
                for a, b in zip(s, s[1:]):
                    out.append(MultiplicityDelta(a, b, 1))
                if s:
                    nd = to.SeqNode(self._rng.random(), x)
                    self.node[x] = nd
                    nodes.append(nd)
            for p, q in zip(nodes, nodes[1:]):
                out.append(MultiplicityDelta(self.sub[p.v][-1], self.sub[q.v][0], 1))
            if nodes:
                self.ptree[rep] = tp.build(nodes)
            self._emit(out)
            yield
