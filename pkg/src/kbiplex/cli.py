"""Command-line interface: enumerate, generate, verify, benchmark."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .bigraph import BipartiteGraph, ParseError, Side, gen_er, load_edge_list, write_edge_list
from .biplex import Biplex, canonical_key
from .large import enumerate_large
from .localenum import VARIANTS
from .oracle import run_passed, verify_run
from .traversal import RunConfig, RunStats, run_traversal


def format_biplex(g: BipartiteGraph, h: Biplex) -> str:
    left = " ".join(g.label(Side.LEFT, v) for v in h.left)
    right = " ".join(g.label(Side.RIGHT, u) for u in h.right)
    return f"L: {left} | R: {right}".replace("L:  |", "L: |")


def parse_biplex_line(g: BipartiteGraph, line: str) -> Biplex:
    """Inverse of format_biplex for graphs whose labels are unique tokens."""
    lpart, rpart = line.split("|")
    left_labels = lpart.split(":", 1)[1].split()
    right_labels = rpart.split(":", 1)[1].split()
    lmap = {g.label(Side.LEFT, v): v for v in range(g.n_left)}
    rmap = {g.label(Side.RIGHT, u): u for u in range(g.n_right)}
    return Biplex.of((lmap[t] for t in left_labels), (rmap[t] for t in right_labels))


def _stats_line(stats: RunStats) -> str:
    return (
        f"# stats: solutions={stats.solutions} links={stats.links_traversed} "
        f"calls={stats.recursive_calls} max_gap={stats.max_call_gap_between_outputs}"
    )


def _load(path: str, fmt: str) -> BipartiteGraph:
    return load_edge_list(path, fmt)


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        k=args.k,
        mode=args.mode,
        variant=args.variant,
        anchor_side=args.anchor,
        exclusion=not args.no_exclusion,
        theta=args.theta,
        theta_left=args.theta_left,
        theta_right=args.theta_right,
        limit=args.limit,
    )


def cmd_enum(args) -> int:
    try:
        g = _load(args.input, args.format)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    cfg = _config_from_args(args)
    out = sys.stdout if args.output == "-" else None
    try:
        fh = out or open(args.output, "w", encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        def sink(h: Biplex, idx: int):
            fh.write(format_biplex(g, h) + "\n")

        if args.theta or args.theta_left or args.theta_right:
            theta = args.theta if args.theta else 1
            stats = enumerate_large(g, args.k, theta, cfg, sink)
        else:
            stats = run_traversal(g, cfg, sink)
        if args.stats:
            fh.write(_stats_line(stats) + "\n")
        if args.measure_delay:
            fh.write(
                f"# delay: max_call_gap={stats.max_call_gap_between_outputs} "
                f"max_wall_gap_s={stats.wall_delay_max:.6f}\n"
            )
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def cmd_gen(args) -> int:
    try:
        g = gen_er(args.nl, args.nr, args.density, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {g.num_edges} edges ({g.n_left}+{g.n_right} vertices) to {args.output}")
    return 0


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    fault = (lambda sols: sols[1:]) if args.inject_fault else None
    trials = 0
    for t in range(args.trials):
        nl = rng.randint(1, args.max_side)
        nr = rng.randint(1, args.max_side)
        m = rng.randint(0, nl * nr)
        codes = rng.sample(range(nl * nr), m)
        g = BipartiteGraph(nl, nr, [divmod(c, nr) for c in codes])
        k = 1 + t % args.kmax
        for mode in ("b", "i"):
            for variant in sorted(VARIANTS):
                for exclusion in (True, False):
                    for anchor in ("left", "right"):
                        cfg = RunConfig(
                            k=k, mode=mode, variant=variant,
                            exclusion=exclusion, anchor_side=anchor,
                        )
                        report = verify_run(g, k, cfg, fault_hook=fault)
                        trials += 1
                        if not run_passed(report):
                            failing = next(r for r in report if not r["pass"])
                            print(
                                f"FAIL trial={t} k={k} mode={mode} variant={variant} "
                                f"exclusion={exclusion} anchor={anchor}"
                            )
                            print(json.dumps(
                                {"name": failing["name"], "witness": repr(failing["witness"])}
                            ))
                            return 1
    print(f"ok: {trials} verification runs passed")
    return 0


def cmd_bench(args) -> int:
    try:
        g = _load(args.input, args.format)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rows = []
    configs = [("b", args.variant), ("i", args.variant)]
    if args.all_variants:
        configs = [("b", args.variant)] + [("i", v) for v in sorted(VARIANTS)]
    for mode, variant in configs:
        cfg = RunConfig(k=args.k, mode=mode, variant=variant, limit=args.limit)
        t0 = time.perf_counter()
        stats = run_traversal(g, cfg, lambda h, i: None)
        dt = time.perf_counter() - t0
        rows.append({
            "mode": mode,
            "variant": variant,
            "k": args.k,
            "limit": args.limit,
            "seconds": round(dt, 4),
            "solutions": stats.solutions,
            "links": stats.links_traversed,
            "calls": stats.recursive_calls,
            "max_call_gap": stats.max_call_gap_between_outputs,
            "max_wall_gap_s": round(stats.wall_delay_max, 6),
        })
    header = f"{'mode':<5} {'variant':<8} {'seconds':>9} {'solutions':>10} {'links':>10} {'calls':>8} {'max_gap':>8}"
    print(header)
    print("-" * len(header))
    for r in rows:
        print(
            f"{r['mode']:<5} {r['variant']:<8} {r['seconds']:>9.4f} "
            f"{r['solutions']:>10} {r['links']:>10} {r['calls']:>8} {r['max_call_gap']:>8}"
        )
    for r in rows:
        print(json.dumps(r))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kbiplex",
        description="Enumerate maximal k-biplexes of a bipartite graph.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("enum", help="enumerate maximal k-biplexes")
    pe.add_argument("--input", required=True)
    pe.add_argument("--format", choices=("plain", "konect"), default="plain")
    pe.add_argument("-k", type=int, required=True)
    pe.add_argument("--mode", choices=("b", "i"), default="i")
    pe.add_argument("--variant", choices=sorted(VARIANTS), default="l2r2")
    pe.add_argument("--anchor", choices=("left", "right"), default="left")
    pe.add_argument("--no-exclusion", action="store_true")
    pe.add_argument("--theta", type=int, default=None)
    pe.add_argument("--theta-left", type=int, default=None)
    pe.add_argument("--theta-right", type=int, default=None)
    pe.add_argument("--limit", type=int, default=None)
    pe.add_argument("--stats", action="store_true")
    pe.add_argument("--measure-delay", action="store_true")
    pe.add_argument("--output", default="-")
    pe.set_defaults(func=cmd_enum)

    pg = sub.add_parser("gen", help="generate a seeded uniform random graph")
    pg.add_argument("--nl", type=int, required=True)
    pg.add_argument("--nr", type=int, required=True)
    pg.add_argument("--density", type=float, required=True)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--output", required=True)
    pg.set_defaults(func=cmd_gen)

    pv = sub.add_parser("verify", help="randomized check against the exhaustive oracle")
    pv.add_argument("--trials", type=int, default=20)
    pv.add_argument("--max-side", type=int, default=6)
    pv.add_argument("--kmax", type=int, default=3)
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    pv.set_defaults(func=cmd_verify)

    pb = sub.add_parser("bench", help="time enumeration runs")
    pb.add_argument("--input", required=True)
    pb.add_argument("--format", choices=("plain", "konect"), default="plain")
    pb.add_argument("-k", type=int, default=1)
    pb.add_argument("--variant", choices=sorted(VARIANTS), default="l2r2")
    pb.add_argument("--all-variants", action="store_true")
    pb.add_argument("--limit", type=int, default=None)
    pb.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", 1) < 1:
        parser.error("k must be at least 1")
    if getattr(args, "limit", None) is not None and args.limit < 1:
        parser.error("limit must be at least 1")
    if getattr(args, "theta", None) is not None and args.theta < 1:
        parser.error("theta must be at least 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
