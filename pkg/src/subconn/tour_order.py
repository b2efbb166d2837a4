"""Treaps of vertices kept in the Euler-tour order of one tree of an EtForest.

Used for path trees and sub-adjacency trees.  Comparisons go through the
forest's order trees, so each costs O(lg n) and a search O(lg^2 n).

Split and join points are reported as *seams*: ``(left, right, sign)`` with
the vertices on both sides of the boundary, ``sign`` -1 when the boundary
disappears and +1 when it is created.  Path graphs turn seams into
concatenation edges; adjacency structures ignore them.
"""

from __future__ import annotations

from typing import Optional

from . import _treap as tp
from ._treap import TreapNode
from .et_forest import CutInfo, EtForest


class SeqNode(TreapNode):
    __slots__ = ("v",)

    def __init__(self, prio: float, v: int):
        super().__init__(prio)
        self.v = v


def _seam(seams, a, b, sign):
    if a is not None and b is not None:
        seams.append((tp.last(a).v, tp.first(b).v, sign))


def _join_seamed(seams, a, b):
    _seam(seams, a, b, 1)
    return tp.join(a, b)


def insert(root: Optional[SeqNode], node: SeqNode, et: EtForest, seams: list) -> SeqNode:
    p = et.position(node.v)
    pos = et.position
    left, right = tp.split_pred(root, lambda x: pos(x.v) < p)
    _seam(seams, left, right, -1)
    t = _join_seamed(seams, left, node)
    return _join_seamed(seams, t, right)


def remove(node: SeqNode, seams: list) -> Optional[SeqNode]:
    left, rest = tp.split_before(node)
    _, right = tp.split(rest, 1)
    node.parent = None
    _seam(seams, left, node, -1)
    _seam(seams, node, right, -1)
    return _join_seamed(seams, left, right)


def split_cut(root: Optional[SeqNode], et: EtForest, info: CutInfo, seams: list):
    """Split a tree's set after ``et`` cut it; returns (outer_root, inner_root)."""
    if root is None:
        return None, None
    inner = info.inner
    pos = et.position
    conn = et.connected
    if info.seam is None:
        l1, rest = tp.split_pred(root, lambda x: not conn(x.v, inner))
    else:
        sp = pos(info.seam)
        l1, rest = tp.split_pred(root, lambda x: not conn(x.v, inner) and pos(x.v) < sp)
    _seam(seams, l1, rest, -1)
    l2, l3 = tp.split_pred(rest, lambda x: conn(x.v, inner))
    _seam(seams, l2, l3, -1)
    return _join_seamed(seams, l1, l3), l2


def merge_link(root_u: Optional[SeqNode], root_v: Optional[SeqNode], et: EtForest, u: int, seams: list):
    """Merge after ``et.link(u, v)`` spliced v's rotated tour right after u."""
    pos = et.position
    if root_v is not None:
        fp = pos(tp.first(root_v).v)
        d, c = tp.split_pred(root_v, lambda x: pos(x.v) >= fp)
        if c is not None:
            _seam(seams, d, c, -1)
            root_v = _join_seamed(seams, c, d)
    if root_u is None:
        return root_v
    if root_v is None:
        return root_u
    up = pos(u)
    a, b = tp.split_pred(root_u, lambda x: pos(x.v) <= up)
    _seam(seams, a, b, -1)
    t = _join_seamed(seams, a, root_v)
    return _join_seamed(seams, t, b)


def values(root: Optional[SeqNode]) -> list[int]:
    return [nd.v for nd in tp.iter_nodes(root)]


def root_of(node: SeqNode) -> SeqNode:
    return tp.root_of(node)
