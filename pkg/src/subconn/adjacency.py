"""Adjacency structures of the high-degree (C) vertices towards the trees of F_A.

For every ``c`` in C, active or not, and every tree T of F_A, the
sub-adjacency tree holds the vertices of T adjacent to ``c`` in Euler-tour
order; the adjacency tree maps each tree with a non-empty sub-adjacency tree
(named by its smallest vertex) to it.
"""

from __future__ import annotations

import random
from typing import Iterable

from . import _treap as tp
from . import tour_order as to
from .errors import PreconditionError
from .et_forest import EtForest, TreeHandle
from .ga_forest import ForestEvent
from .metering import METER


class AdjacencyStructures:
    def __init__(self, et: EtForest, *, seed: int = 0):
        self.et = et
        self._rng = random.Random(seed)
        # c -> {tree rep -> sub-adjacency root}
        self.trees: dict[int, dict[int, to.SeqNode]] = {}
        # c -> {u -> node}
        self.nodes: dict[int, dict[int, to.SeqNode]] = {}

    def __contains__(self, c) -> bool:
        return c in self.trees

    def c_vertices(self):
        return self.trees.keys()

    # -- C membership -----------------------------------------------------

    def add_c_vertex(self, c: int, a_neighbors: Iterable[int]) -> None:
        """Create c's structure from its neighbours currently in F_A."""
        if c in self.trees:
            raise PreconditionError(f"{c} already has an adjacency structure")
        et = self.et
        groups: dict[int, list[int]] = {}
        for u in a_neighbors:
            METER.n += 1
            groups.setdefault(et.tree_of(u).rep, []).append(u)
        nodes = {}
        trees = {}
        for rep, us in groups.items():
            us.sort(key=et.position)
            seq = []
            for u in us:
                nd = to.SeqNode(self._rng.random(), u)
                nodes[u] = nd
                seq.append(nd)
            trees[rep] = tp.build(seq)
        self.trees[c] = trees
        self.nodes[c] = nodes

    def remove_c_vertex(self, c: int) -> None:
        del self.trees[c]
        del self.nodes[c]

    # -- queries ----------------------------------------------------------

    def _require(self, c):
        if c not in self.trees:
            raise PreconditionError(f"{c} is not a C vertex")

    def is_adjacent(self, c: int, h: TreeHandle) -> bool:
        self._require(c)
        return h.rep in self.trees[c]

    def adjacent_c_vertices(self, h: TreeHandle) -> list[int]:
        rep = h.rep
        out = []
        for c, trees in self.trees.items():
            METER.n += 1
            if rep in trees:
                out.append(c)
        out.sort()
        return out

    def sub_adjacency(self, c: int, rep: int) -> list[int]:
        return to.values(self.trees[c].get(rep))

    # -- maintenance ------------------------------------------------------

    def on_a_edge_change(self, c: int, u: int, present: bool) -> None:
        """Vertex ``u`` adjacent to ``c`` entered (or is leaving) F_A."""
        self._require(c)
        trees = self.trees[c]
        rep = self.et.tree_of(u).rep
        if present:
            nd = to.SeqNode(self._rng.random(), u)
            self.nodes[c][u] = nd
            trees[rep] = to.insert(trees.pop(rep, None), nd, self.et, [])
        else:
            nd = self.nodes[c].pop(u)
            root = to.remove(nd, [])
            if root is None:
                del trees[rep]
            else:
                trees[rep] = root

    def on_forest_event(self, ev: ForestEvent) -> None:
        et = self.et
        if ev.kind == "link":
            ru, rv = ev.before
            new_rep = None
            for trees in self.trees.values():
                METER.n += 1
                pu = trees.pop(ru, None)
                pv = trees.pop(rv, None)
                if pu is None and pv is None:
                    continue
                if new_rep is None:
                    new_rep = et.tree_of(ev.u).rep
                trees[new_rep] = to.merge_link(pu, pv, et, ev.u, [])
        else:
            (r,) = ev.before
            reps = None
            for trees in self.trees.values():
                METER.n += 1
                p = trees.pop(r, None)
                if p is None:
                    continue
                if reps is None:
                    reps = (et.tree_of(ev.cut.outer).rep, et.tree_of(ev.cut.inner).rep)
                outer, inner = to.split_cut(p, et, ev.cut, [])
                if outer is not None:
                    trees[reps[0]] = outer
                if inner is not None:
                    trees[reps[1]] = inner
