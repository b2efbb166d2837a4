"""Command line: ``python -m subconn {run,gen,scale}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .core import Config
from .errors import PreconditionError, TraceFormatError


def _cmd_run(args) -> int:
    text = Path(args.trace).read_text(encoding="utf-8")
    try:
        ops = bench.parse_trace(text)
        rep = bench.run(ops, Config(seed=args.seed, c0=args.c0), check=args.check,
                        invariant_stride=args.invariant_stride)
    except (TraceFormatError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(rep.summary())
    if args.answers:
        for a in rep.answers:
            print("true" if a else "false")
    for line, s, t, got, want in rep.mismatches[:20]:
        print(f"mismatch at line {line}: Q {s} {t} -> {got}, oracle {want}", file=sys.stderr)
    for line, problems in rep.invariant_failures[:20]:
        print(f"invariant failure after line {line}: {'; '.join(problems)}", file=sys.stderr)
    return 0 if rep.ok else 1


def _cmd_gen(args) -> int:
    try:
        ops = bench.generate(args.kind, args.n, args.m, args.ops, args.seed)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = f"# kind={args.kind} n={args.n} m={args.m} ops={args.ops} seed={args.seed}\n"
    text += bench.format_trace(ops)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_scale(args) -> int:
    try:
        rows = bench.scaling(args.sizes, args.ops, args.seed, config=Config(seed=args.seed))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = bench.rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if len(args.sizes) >= 2:
        for kind in ("vertex", "Q", "space"):
            xs = [r["m"] for r in rows if r["op_kind"] == kind]
            ys = [max(r["mean_elem"], 1e-9) for r in rows if r["op_kind"] == kind]
            print(f"slope[{kind}] = {bench.loglog_slope(xs, ys):.3f}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subconn", description="Dynamic subgraph connectivity harness.")
    sub = p.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="replay a trace file")
    r.add_argument("--trace", required=True)
    r.add_argument("--check", action="store_true", help="compare every query with BFS on G[S]")
    r.add_argument("--invariant-stride", type=int, default=0, metavar="K",
                   help="run the full invariant sweep every K updates (0: never)")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--c0", type=int, default=4, help="sketch repetition constant")
    r.add_argument("--answers", action="store_true", help="print query answers, one per line")
    r.set_defaults(func=_cmd_run)

    g = sub.add_parser("gen", help="generate a trace")
    g.add_argument("--kind", choices=bench.KINDS, default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--ops", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)

    s = sub.add_parser("scale", help="operation counts per size, as CSV")
    s.add_argument("--sizes", type=int, nargs="+", required=True)
    s.add_argument("--ops", type=int, default=2000, help="ops per size")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_scale)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
