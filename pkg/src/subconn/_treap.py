"""Implicit-key treaps with parent pointers.

Sequences are kept in treaps whose in-order traversal is the sequence.
``split``/``join`` are the primitives; everything else is built on them.
Every subclass supplies ``pull`` which recomputes its augmentation from the
children, so aggregates stay correct across rotations for free.

Expected depth is O(lg n), which gives with-high-probability O(lg n)
split and join.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional, TypeVar

from .metering import METER


class TreapNode:
    __slots__ = ("left", "right", "parent", "prio", "size")

    def __init__(self, prio: float):
        self.left = None
        self.right = None
        self.parent = None
        self.prio = prio
        self.size = 1

    def pull(self) -> None:
        METER.n += 1
        s = 1
        if self.left is not None:
            s += self.left.size
        if self.right is not None:
            s += self.right.size
        self.size = s


N = TypeVar("N", bound=TreapNode)


def _join(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        r = _join(a.right, b)
        a.right = r
        r.parent = a
        a.pull()
        return a
    l = _join(a, b.left)
    b.left = l
    l.parent = b
    b.pull()
    return b


def join(a: Optional[N], b: Optional[N]) -> Optional[N]:
    """Concatenate two treaps (all of ``a`` before all of ``b``)."""
    t = _join(a, b)
    if t is not None:
        t.parent = None
    return t


def join_all(*parts):
    t = None
    for p in parts:
        t = _join(t, p)
    if t is not None:
        t.parent = None
    return t


def _split(t, k):
    if t is None:
        return None, None
    ls = t.left.size if t.left is not None else 0
    if k <= ls:
        a, b = _split(t.left, k)
        t.left = b
        if b is not None:
            b.parent = t
        t.pull()
        return a, t
    a, b = _split(t.right, k - ls - 1)
    t.right = a
    if a is not None:
        a.parent = t
    t.pull()
    return t, b


def split(t: Optional[N], k: int):
    """Split into the first ``k`` elements and the rest."""
    a, b = _split(t, k)
    if a is not None:
        a.parent = None
    if b is not None:
        b.parent = None
    return a, b


def _split_pred(t, pred):
    if t is None:
        return None, None
    if pred(t):
        a, b = _split_pred(t.right, pred)
        t.right = a
        if a is not None:
            a.parent = t
        t.pull()
        return t, b
    a, b = _split_pred(t.left, pred)
    t.left = b
    if b is not None:
        b.parent = t
    t.pull()
    return a, t


def split_pred(t: Optional[N], pred: Callable[[N], bool]):
    """Split off the longest prefix on which ``pred`` holds.

    ``pred`` must be monotone along the sequence (true...true false...false).
    """
    a, b = _split_pred(t, pred)
    if a is not None:
        a.parent = None
    if b is not None:
        b.parent = None
    return a, b


def root_of(x: N) -> N:
    k = 1
    while x.parent is not None:
        x = x.parent
        k += 1
    METER.n += k
    return x


def rank(x: TreapNode) -> int:
    """0-based position of ``x`` in its sequence."""
    r = x.left.size if x.left is not None else 0
    while x.parent is not None:
        p = x.parent
        if p.right is x:
            r += 1 + (p.left.size if p.left is not None else 0)
        x = p
    return r


def split_before(x: N):
    """Split the sequence containing ``x`` into (before x, x and after)."""
    return split(root_of(x), rank(x))


def split_after(x: N):
    return split(root_of(x), rank(x) + 1)


def detach(x: N):
    """Remove ``x`` from its sequence; returns (rest_root, x)."""
    a, b = split_before(x)
    _, c = split(b, 1)
    x.parent = None
    return join(a, c), x


def first(t: Optional[N]) -> Optional[N]:
    if t is None:
        return None
    while t.left is not None:
        t = t.left
    return t


def last(t: Optional[N]) -> Optional[N]:
    if t is None:
        return None
    while t.right is not None:
        t = t.right
    return t


def successor(x: N) -> Optional[N]:
    if x.right is not None:
        return first(x.right)
    while x.parent is not None and x.parent.right is x:
        x = x.parent
    return x.parent


def predecessor(x: N) -> Optional[N]:
    if x.left is not None:
        return last(x.left)
    while x.parent is not None and x.parent.left is x:
        x = x.parent
    return x.parent


def kth(t: N, k: int) -> N:
    while True:
        ls = t.left.size if t.left is not None else 0
        if k < ls:
            t = t.left
        elif k == ls:
            return t
        else:
            k -= ls + 1
            t = t.right


def iter_nodes(t: Optional[N]) -> Iterator[N]:
    stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        yield t
        t = t.right


def build(nodes: list) -> Optional[TreapNode]:
    """Linear-time treap over ``nodes`` in the given order (priorities preset)."""
    stack: list = []
    for nd in nodes:
        nd.left = nd.right = nd.parent = None
        last_popped = None
        while stack and stack[-1].prio < nd.prio:
            last_popped = stack.pop()
        if last_popped is not None:
            nd.left = last_popped
            last_popped.parent = nd
        if stack:
            stack[-1].right = nd
            nd.parent = stack[-1]
        stack.append(nd)
    if not stack:
        return None
    root = stack[0]
    # post-order recompute of augmentations
    order = []
    todo = [root]
    while todo:
        x = todo.pop()
        order.append(x)
        if x.left is not None:
            todo.append(x.left)
        if x.right is not None:
            todo.append(x.right)
    for x in reversed(order):
        x.pull()
    root.parent = None
    return root
