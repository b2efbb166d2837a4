"""Edge multiplicities of the multigraph H and the simple graph G* derived from it.

``D`` counts how many independent original or artificial edges currently
join a pair.  A pair is an edge of G* exactly when its count is positive,
both endpoints are live and they differ; the connectivity structure is told
about an edge only when one of those conditions flips.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .cutset_conn import CutsetConnectivity
from .errors import PreconditionError
from .metering import METER


class MultiplicityDelta(NamedTuple):
    u: int
    v: int
    sign: int  # +1 or -1


class EdgeKey(NamedTuple):
    u: int
    v: int

    @classmethod
    def of(cls, u: int, v: int) -> "EdgeKey":
        return cls(u, v) if u <= v else cls(v, u)

    def index(self, n: int) -> int:
        return self.u + n * self.v


class MultiplicityMap:
    def __init__(self, index_base: int, conn: CutsetConnectivity):
        self.n = index_base
        self.conn = conn
        self.counts: dict[int, int] = {}
        self.partners: dict[int, set[int]] = {}
        self.live: set[int] = set()

    def _key(self, u, v):
        if u > v:
            u, v = v, u
        return u + self.n * v

    def count(self, u: int, v: int) -> int:
        return self.counts.get(self._key(u, v), 0)

    def apply_delta(self, d: MultiplicityDelta) -> None:
        self.add(d.u, d.v, d.sign)

    def add(self, u: int, v: int, sign: int) -> None:
        METER.n += 1
        k = self._key(u, v)
        counts = self.counts
        c = counts.get(k, 0)
        if sign > 0:
            counts[k] = c + 1
            if c == 0:
                self.partners.setdefault(u, set()).add(v)
                self.partners.setdefault(v, set()).add(u)
                if u != v and u in self.live and v in self.live:
                    self.conn.insert_edge(u, v)
        else:
            if c == 0:
                raise RuntimeError(f"multiplicity of ({u}, {v}) would go negative")
            if c == 1:
                del counts[k]
                self._unlink(u, v)
                if u != v and u in self.live and v in self.live:
                    self.conn.delete_edge(u, v)
            else:
                counts[k] = c - 1

    def _unlink(self, u, v):
        s = self.partners[u]
        s.discard(v)
        if not s:
            del self.partners[u]
        if u != v:
            s = self.partners[v]
            s.discard(u)
            if not s:
                del self.partners[v]

    def set_vertex_live(self, v: int, live: bool) -> None:
        if live:
            if v in self.live:
                raise PreconditionError(f"vertex {v} already live")
            self.live.add(v)
            self.conn.add_vertex(v)
            for w in sorted(self.partners.get(v, ())):
                METER.n += 1
                if w != v and w in self.live:
                    self.conn.insert_edge(v, w)
        else:
            if v not in self.live:
                raise PreconditionError(f"vertex {v} is not live")
            ws = []
            for w in sorted(self.partners.get(v, ())):
                METER.n += 1
                if w != v and w in self.live:
                    ws.append(w)
            self.conn.delete_edges_of(v, ws)
            self.live.remove(v)
            self.conn.remove_isolated_vertex(v)

    def incident_keys(self, v: int) -> list[tuple[EdgeKey, int]]:
        return [
            (EdgeKey.of(v, w), self.counts[self._key(v, w)]) for w in sorted(self.partners.get(v, ()))
        ]

    def items(self) -> Iterator[tuple[EdgeKey, int]]:
        for k, c in self.counts.items():
            v, u = divmod(k, self.n)
            yield EdgeKey(u, v), c

    def gstar_edges(self) -> set[tuple[int, int]]:
        live = self.live
        return {(k.u, k.v) for k, _ in self.items() if k.u != k.v and k.u in live and k.v in live}

    def dump(self) -> str:
        rows = sorted((k.u, k.v, c) for k, c in self.items())
        return "".join(f"{u} {v} {c}\n" for u, v, c in rows)

    def __len__(self) -> int:
        return len(self.counts)
