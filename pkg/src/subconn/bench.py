"""Trace replay, workload generation and scaling measurements."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import Config, SubgraphConnectivity
from .errors import PreconditionError, TraceFormatError
from .metering import METER
from .oracle import ReferenceState, check_invariants

OP_ARITY = {"IV": 1, "RV": 1, "IE": 2, "DE": 2, "Q": 2}
KINDS = ("uniform", "failure-burst", "island-heavy")


@dataclass(frozen=True)
class TraceOp:
    kind: str
    args: tuple
    lineno: int = 0

    def as_tuple(self) -> tuple:
        return (self.kind, *self.args)

    def __str__(self) -> str:
        return " ".join((self.kind, *map(str, self.args)))


def parse_trace(text: str) -> list[TraceOp]:
    ops = []
    for i, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0].startswith("#"):
            continue
        kind = tok[0]
        if kind not in OP_ARITY:
            raise TraceFormatError(i, f"unknown op {kind!r}")
        if len(tok) != 1 + OP_ARITY[kind]:
            raise TraceFormatError(i, f"{kind} takes {OP_ARITY[kind]} vertex ids")
        try:
            args = tuple(int(x) for x in tok[1:])
        except ValueError:
            raise TraceFormatError(i, f"bad vertex id in {line.strip()!r}") from None
        if any(x < 0 for x in args):
            raise TraceFormatError(i, "vertex ids must be non-negative")
        ops.append(TraceOp(kind, args, i))
    return ops


def format_trace(ops: Iterable[TraceOp]) -> str:
    return "".join(f"{op}\n" for op in ops)


@dataclass
class KindStats:
    count: int = 0
    total_elem: int = 0
    max_elem: int = 0
    total_ns: int = 0
    max_ns: int = 0

    def add(self, elem: int, ns: int) -> None:
        self.count += 1
        self.total_elem += elem
        self.total_ns += ns
        self.max_elem = max(self.max_elem, elem)
        self.max_ns = max(self.max_ns, ns)

    @property
    def mean_elem(self) -> float:
        return self.total_elem / self.count if self.count else 0.0

    @property
    def mean_ns(self) -> float:
        return self.total_ns / self.count if self.count else 0.0


@dataclass
class RunReport:
    stats: dict = field(default_factory=dict)
    answers: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)
    false_positives: int = 0
    invariant_failures: list = field(default_factory=list)
    rebuilds: int = 0
    final: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.invariant_failures

    def summary(self) -> str:
        lines = []
        for k in sorted(self.stats):
            s = self.stats[k]
            lines.append(
                f"{k}: count={s.count} mean_elem={s.mean_elem:.1f} max_elem={s.max_elem} "
                f"mean_us={s.mean_ns / 1e3:.1f}"
            )
        lines.append(f"rebuilds={self.rebuilds} mismatches={len(self.mismatches)} "
                     f"invariant_failures={len(self.invariant_failures)}")
        return "\n".join(lines)


def _split_preload(ops: Sequence[TraceOp]):
    """Leading IE/IV lines describe the initial (G, S) and are preprocessed in batch."""
    i = 0
    edges, active = [], []
    while i < len(ops) and ops[i].kind in ("IE", "IV"):
        if ops[i].kind == "IE":
            edges.append(ops[i].args)
        else:
            active.append(ops[i].args[0])
        i += 1
    return edges, active, ops[i:]


def run(
    ops: Sequence[TraceOp],
    config: Config = Config(),
    *,
    check: bool = False,
    invariant_stride: int = 0,
    n: Optional[int] = None,
) -> RunReport:
    """Replay ``ops``; with ``check`` every query is compared with BFS on G[S]."""
    rep = RunReport()
    if not ops:
        return rep
    if n is None:
        n = 1 + max(x for op in ops for x in op.args)
    edges, active, rest = _split_preload(ops)
    try:
        sc = SubgraphConnectivity(n, edges, active, config)
    except PreconditionError as e:
        line = ops[0].lineno
        raise PreconditionError(f"line {line}: initial graph: {e}") from None
    ref = ReferenceState(n, edges, active) if check else None
    stats = rep.stats
    for k, op in enumerate(rest):
        t0 = time.perf_counter_ns()
        e0 = METER.n
        try:
            if op.kind == "Q":
                ans = sc.connected(*op.args)
            else:
                sc._update(op.as_tuple())
        except PreconditionError as e:
            raise PreconditionError(f"line {op.lineno}: {op}: {e}") from None
        ns = time.perf_counter_ns() - t0
        s = stats.get(op.kind)
        if s is None:
            s = stats[op.kind] = KindStats()
        s.add(METER.n - e0, ns)
        if op.kind == "Q":
            rep.answers.append(ans)
            if ref is not None:
                want = ref.connected(*op.args)
                if ans != want:
                    rep.mismatches.append((op.lineno, op.args[0], op.args[1], ans, want))
                    if ans and not want:
                        rep.false_positives += 1
        elif ref is not None:
            ref.apply(op.as_tuple())
        if invariant_stride and (k + 1) % invariant_stride == 0:
            bad = check_invariants(sc.live)
            if bad:
                rep.invariant_failures.append((op.lineno, bad))
    rep.rebuilds = sc.rebuilds
    rep.final = sc.stats()
    return rep


# -- workload generation --------------------------------------------------


def _random_graph(rng, n, m):
    edges = set()
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return edges


def generate(kind: str, n: int, m: int, ops: int, seed: int = 0) -> list[TraceOp]:
    """A reproducible trace: initial edges and S, then mixed updates and queries.

    Mix: 50% queries, 30% vertex toggles, 20% edge updates (edge count stays
    near ``m``).  ``failure-burst`` hangs a quarter of the edges on a few hub
    vertices and switches hubs off and on in bursts; ``island-heavy`` keeps
    half the vertices on sparse paths and aims most queries at them.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown workload kind {kind!r}; expected one of {KINDS}")
    if n < 2 or m < 1 or ops < 0:
        raise ValueError("need n >= 2, m >= 1, ops >= 0")
    if m < n:
        raise ValueError("need m >= n")
    if m > n * (n - 1) // 2:
        raise ValueError(f"a simple graph on {n} vertices has at most {n * (n - 1) // 2} edges")
    rng = random.Random(f"{kind}:{n}:{m}:{ops}:{seed}")
    hubs: list[int] = []
    low: list[int] = []
    if kind == "uniform":
        edges = _random_graph(rng, n, m)
    elif kind == "failure-burst":
        k = max(1, math.isqrt(n) // 4)
        hubs = rng.sample(range(n), k)
        edges = set()
        target = min(m // 4, k * (n - k) // 2)
        while len(edges) < target:
            h, v = rng.choice(hubs), rng.randrange(n)
            if h != v:
                edges.add((min(h, v), max(h, v)))
        while len(edges) < m:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                edges.add((min(u, v), max(u, v)))
    else:
        perm = list(range(n))
        rng.shuffle(perm)
        low = perm[: n // 2]
        core = perm[n // 2 :]
        edges = set()
        for i in range(0, len(low) - 1):
            if rng.random() < 0.8:
                u, v = low[i], low[i + 1]
                edges.add((min(u, v), max(u, v)))
        for v in low:
            if rng.random() < 0.2:
                u = rng.choice(core)
                edges.add((min(u, v), max(u, v)))
        if len(core) * (len(core) - 1) // 2 < m - len(edges):
            raise ValueError("island-heavy: m too large for the dense half")
        while len(edges) < m:
            u, v = rng.choice(core), rng.choice(core)
            if u != v:
                edges.add((min(u, v), max(u, v)))
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    S = {v for v in range(n) if rng.random() < 0.6}
    out = [TraceOp("IE", e) for e in sorted(edges)]
    out += [TraceOp("IV", (v,)) for v in sorted(S)]
    elist = sorted(edges)
    epos = {e: i for i, e in enumerate(elist)}

    def del_edge(e):
        i = epos.pop(e)
        last = elist.pop()
        if i < len(elist):
            elist[i] = last
            epos[last] = i
        adj[e[0]].discard(e[1])
        adj[e[1]].discard(e[0])

    def add_edge(e):
        epos[e] = len(elist)
        elist.append(e)
        adj[e[0]].add(e[1])
        adj[e[1]].add(e[0])

    def toggle(v):
        if v in S:
            S.discard(v)
            return TraceOp("RV", (v,))
        S.add(v)
        return TraceOp("IV", (v,))

    active = lambda: sorted(S)  # noqa: E731
    total = len(out) + ops
    while len(out) < total:
        r = rng.random()
        if r < 0.5 and len(S) >= 2:
            if kind == "island-heavy" and rng.random() < 0.8:
                cand = [v for v in low if v in S] or active()
                s = rng.choice(cand)
                t = rng.choice(cand if rng.random() < 0.7 else active())
            else:
                acts = active()
                s, t = rng.choice(acts), rng.choice(acts)
            out.append(TraceOp("Q", (s, t)))
        elif r < 0.8:
            if kind == "failure-burst" and rng.random() < 0.1:
                chosen = rng.sample(hubs, max(1, len(hubs) // 2))
                for h in chosen:
                    out.append(toggle(h))
                acts = active()
                if len(acts) >= 2:
                    for _ in range(3):
                        out.append(TraceOp("Q", (rng.choice(acts), rng.choice(acts))))
                out.extend(toggle(h) for h in chosen)
                continue
            v = rng.choice(low) if kind == "island-heavy" and rng.random() < 0.5 else rng.randrange(n)
            out.append(toggle(v))
        else:
            if elist and (len(elist) >= m or rng.random() < 0.5):
                e = elist[rng.randrange(len(elist))]
                del_edge(e)
                out.append(TraceOp("DE", e))
            else:
                while True:
                    if kind == "island-heavy":
                        u = rng.choice(low) if rng.random() < 0.3 else rng.randrange(n)
                    else:
                        u = rng.randrange(n)
                    v = rng.randrange(n)
                    e = (min(u, v), max(u, v))
                    if u != v and e not in epos:
                        break
                add_edge(e)
                out.append(TraceOp("IE", e))
    return [TraceOp(op.kind, op.args, i + 1) for i, op in enumerate(out[:total])]


# -- scaling --------------------------------------------------------------

CSV_HEADER = ["m", "op_kind", "count", "mean_elem", "max_elem", "mean_ns", "max_ns"]


def scaling(
    sizes: Sequence[int],
    ops_per_size: int = 2000,
    seed: int = 0,
    *,
    config: Config = Config(),
    kind: str = "uniform",
) -> list[dict]:
    """Run one generated trace per size with n = 2 m^(3/4) vertices.

    That vertex count puts the mean degree at twice the A/B threshold, so
    both classes stay populated as m grows.  Returns one row per (size, op
    kind), a ``vertex`` row pooling IV and RV, and a ``space`` row whose mean
    is the stored-entry count of the final structure.
    """
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    rows = []
    for m in sizes:
        n = max(2, min(m, round(2 * m**0.75)))
        ops = generate(kind, n, m, ops_per_size, seed)
        rep = run(ops, config, n=n)
        for k in ("IV", "RV", "IE", "DE", "Q"):
            s = rep.stats.get(k)
            if s is None:
                continue
            rows.append({
                "m": m, "op_kind": k, "count": s.count, "mean_elem": round(s.mean_elem, 3),
                "max_elem": s.max_elem, "mean_ns": round(s.mean_ns), "max_ns": s.max_ns,
            })
        upd = [rep.stats[k] for k in ("IV", "RV") if k in rep.stats]
        cnt = sum(s.count for s in upd)
        rows.append({
            "m": m, "op_kind": "vertex", "count": cnt,
            "mean_elem": round(sum(s.total_elem for s in upd) / max(1, cnt), 3),
            "max_elem": max((s.max_elem for s in upd), default=0),
            "mean_ns": round(sum(s.total_ns for s in upd) / max(1, cnt)),
            "max_ns": max((s.max_ns for s in upd), default=0),
        })
        space = rep.final["stored"]["total"]
        rows.append({"m": m, "op_kind": "space", "count": 1, "mean_elem": space,
                     "max_elem": space, "mean_ns": 0, "max_ns": 0})
    return rows


def rows_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    import numpy as np

    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
