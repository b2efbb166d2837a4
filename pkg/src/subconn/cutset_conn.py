"""Monte-Carlo dynamic connectivity with XOR cutset sketches.

Each vertex owns a sketch: ``levels x reps`` 64-bit words, packed into one
Python int.  Word (i, r) is the XOR of the names of incident edges sampled
at level i by repetition r's hash; level i keeps an edge with probability
about 2**-i and levels are nested.  Edges inside a vertex set cancel, so the
XOR of a set's sketches only sees its boundary.

A witness spanning forest is kept in an :class:`EtForest` whose treap nodes
aggregate the sketches, so any witness tree's boundary sketch is read off
its root.  Deleting a witness edge searches the smaller side's boundary
sketch for a name that decodes to a real edge leaving the tree.

Answers of ``True`` are always right (they are backed by a witness path of
real edges); ``False`` can be wrong only if a replacement search missed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PreconditionError, UnknownVertexError
from .et_forest import EtForest
from .metering import METER

# Mersenne prime for the pairwise-independent hash family h(x) = (a x + b) mod p
_P = (1 << 31) - 1


class CutsetConnectivity:
    """Dynamic connectivity over vertex ids in ``[0, capacity)``."""

    def __init__(self, capacity: int, *, c0: int = 4, seed: int = 0):
        if capacity < 2:
            capacity = 2
        self.capacity = capacity
        lg = max(1, math.ceil(math.log2(capacity)))
        self.levels = lg + 1
        self.reps = c0 * lg
        self.seed = seed
        rng = np.random.default_rng(seed)
        self._a = rng.integers(1, _P, size=self.reps, dtype=np.int64)
        self._b = rng.integers(0, _P, size=self.reps, dtype=np.int64)
        self._thresholds = np.array([_P >> i for i in range(self.levels)], dtype=np.int64)[:, None]
        self._nbytes = 8 * self.levels * self.reps
        self.words = self.levels * self.reps
        self.forest = EtForest(order_trees=False, track_min=False, seed=seed)
        self.edges: set[int] = set()
        self.degree: dict[int, int] = {}

    # -- naming -----------------------------------------------------------

    def edge_name(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return u + self.capacity * v

    def decode(self, name: int) -> tuple[int, int]:
        v, u = divmod(name, self.capacity)
        return u, v

    def edge_sketch(self, name: int) -> int:
        """The sketch contribution of one edge, packed as an int."""
        h = (self._a * (name % _P) + self._b) % _P
        mask = h[None, :] < self._thresholds
        words = np.where(mask, np.uint64(name), np.uint64(0))
        return int.from_bytes(words.tobytes(), "little")

    def unpack(self, sketch: int) -> np.ndarray:
        """Sketch int -> (levels, reps) array of words."""
        return np.frombuffer(sketch.to_bytes(self._nbytes, "little"), dtype=np.uint64).reshape(
            self.levels, self.reps
        )

    # -- vertices ---------------------------------------------------------

    def __contains__(self, v) -> bool:
        return v in self.degree

    def vertices(self):
        return self.degree.keys()

    def add_vertex(self, v: int) -> None:
        if not 0 <= v < self.capacity:
            raise PreconditionError(f"vertex {v} outside capacity {self.capacity}")
        if v in self.degree:
            raise PreconditionError(f"vertex {v} already present")
        self.degree[v] = 0
        self.forest.add_vertex(v)

    def remove_isolated_vertex(self, v: int) -> None:
        if v not in self.degree:
            raise UnknownVertexError(f"vertex {v} not present")
        if self.degree[v]:
            raise PreconditionError(f"vertex {v} still has {self.degree[v]} edges")
        del self.degree[v]
        self.forest.remove_vertex(v)

    # -- edges ------------------------------------------------------------

    def _require(self, v):
        if v not in self.degree:
            raise UnknownVertexError(f"vertex {v} not present")

    def _xor_edge(self, u, v, name):
        sk = self.edge_sketch(name)
        touched = self.forest.xor_sketch(u, sk) + self.forest.xor_sketch(v, sk)
        METER.n += touched * self.words

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_name(u, v) in self.edges

    def insert_edge(self, u: int, v: int) -> None:
        self._require(u)
        self._require(v)
        if u == v:
            raise PreconditionError("self-loops are not edges")
        name = self.edge_name(u, v)
        if name in self.edges:
            raise PreconditionError(f"edge ({u}, {v}) already present")
        self.edges.add(name)
        self.degree[u] += 1
        self.degree[v] += 1
        self._xor_edge(u, v, name)
        if not self.forest.connected(u, v):
            self.forest.link(u, v)

    def delete_edge(self, u: int, v: int) -> None:
        self._require(u)
        self._require(v)
        name = self.edge_name(u, v)
        if name not in self.edges:
            raise PreconditionError(f"edge ({u}, {v}) not present")
        self.edges.remove(name)
        self.degree[u] -= 1
        self.degree[v] -= 1
        self._xor_edge(u, v, name)
        if self.forest.has_edge(u, v):
            self.forest.cut(u, v)
            side = u if self.forest.tree_size(u) <= self.forest.tree_size(v) else v
            self._replace(side)

    def delete_edges_of(self, v: int, ws) -> None:
        """Delete edges (v, w) for w in ``ws``, non-witness edges first.

        Removing the non-witness edges first keeps replacement searches from
        picking edges of v that are about to go as well.
        """
        has = self.forest.has_edge
        ws = list(ws)
        for w in ws:
            if not has(v, w):
                self.delete_edge(v, w)
        for w in ws:
            if has(v, w):
                self.delete_edge(v, w)

    def _replace(self, side: int) -> bool:
        """Find an edge leaving ``side``'s witness tree and link it."""
        agg = self.forest.tree_sketch(side)
        if not agg:
            return False
        words = self.unpack(agg)
        METER.n += self.words
        cands = np.unique(words[words != 0])
        forest = self.forest
        for c in cands.tolist():
            METER.n += 1
            if c not in self.edges:
                continue
            a, b = self.decode(c)
            if forest.connected(a, side) != forest.connected(b, side):
                forest.link(a, b)
                return True
        return False

    # -- queries ----------------------------------------------------------

    def connected(self, u: int, v: int) -> bool:
        self._require(u)
        self._require(v)
        if u == v:
            return True
        return self.forest.connected(u, v)

    def witness_edges(self) -> set[tuple[int, int]]:
        return set(self.forest.edges())

    def edge_pairs(self) -> set[tuple[int, int]]:
        return {self.decode(x) for x in self.edges}

    def stored_words(self) -> int:
        return len(self.degree) * self.words
