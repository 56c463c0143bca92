"""Desk-scale ground truth: exhaustive enumeration, solution similarity,
the left-anchored path constructor, and the verification harness."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .bigraph import BipartiteGraph
from .biplex import (
    Biplex,
    canonical_key,
    extend_greedy,
    extend_to_max,
    initial_solution,
    is_kbiplex,
    is_maximal,
)
from .traversal import RunConfig, run_traversal

ORACLE_VERTEX_LIMIT = 24


def brute_force_mbps(g: BipartiteGraph, k: int) -> list[Biplex]:
    """All maximal k-biplexes by exhaustive subset-pair checking.

    Guarded to graphs with at most ORACLE_VERTEX_LIMIT vertices; exact by
    construction. A k-biplex is maximal iff no single outside vertex can be
    added, which suffices because the structure is hereditary.
    """
    nl, nr = g.n_left, g.n_right
    if nl + nr > ORACLE_VERTEX_LIMIT:
        raise ValueError(
            f"oracle guard: {nl + nr} vertices exceed the {ORACLE_VERTEX_LIMIT} cap"
        )
    if k < 1:
        raise ValueError("k must be a positive integer")
    adj_l = [0] * nl
    adj_r = [0] * nr
    for v, u in g.edges():
        adj_l[v] |= 1 << u
        adj_r[u] |= 1 << v
    full_l = (1 << nl) - 1

    biplexes: list[tuple[int, int]] = []
    for rm in range(1 << nr):
        ok_lefts = 0
        for v in range(nl):
            if (rm & ~adj_l[v]).bit_count() <= k:
                ok_lefts |= 1 << v
        rm_bits = [u for u in range(nr) if rm >> u & 1]
        for lm in range(1 << nl):
            if lm & ~ok_lefts:
                continue
            if all((lm & ~adj_r[u] & full_l).bit_count() <= k for u in rm_bits):
                biplexes.append((lm, rm))

    result = []
    for lm, rm in biplexes:
        lefts = [v for v in range(nl) if lm >> v & 1]
        rights = [u for u in range(nr) if rm >> u & 1]
        miss_r = {u: len(lefts) - (lm & adj_r[u]).bit_count() for u in rights}
        miss_l = {v: len(rights) - (rm & adj_l[v]).bit_count() for v in lefts}
        maximal = True
        for w in range(nl):
            if lm >> w & 1:
                continue
            if (rm & ~adj_l[w]).bit_count() <= k and all(
                miss_r[u] < k or (adj_r[u] >> w & 1) for u in rights
            ):
                maximal = False
                break
        if maximal:
            for u in range(nr):
                if rm >> u & 1:
                    continue
                if (lm & ~adj_r[u] & full_l).bit_count() <= k and all(
                    miss_l[v] < k or (adj_l[v] >> u & 1) for v in lefts
                ):
                    maximal = False
                    break
        if maximal:
            result.append(Biplex(tuple(lefts), tuple(rights)))
    result.sort(key=canonical_key)
    return result


def similarity(h1: Biplex, h2: Biplex) -> int:
    """Number of vertices shared by the two solutions."""
    return len(set(h1.left) & set(h2.left)) + len(set(h1.right) & set(h2.right))


@dataclass(frozen=True)
class PathStep:
    anchor: int
    local: Biplex
    extended: Biplex


@dataclass(frozen=True)
class PathTrace:
    solutions: tuple[Biplex, ...]
    steps: tuple[PathStep, ...]


def construct_left_anchored_path(g: BipartiteGraph, k: int, target: Biplex) -> PathTrace:
    """Path of left-anchored links from the initial solution to `target`.

    Each round picks the smallest-id target-left vertex missing from the
    current solution, grows the shared part plus that anchor to a local
    solution within the almost-satisfying graph, then extends to a maximal
    solution. The target's right side stays inside every intermediate right
    side, and the shared vertex count strictly grows, so the walk ends at
    the target.
    """
    t_left, t_right = target.vertex_sets()
    if not is_kbiplex(g, t_left, t_right, k) or not is_maximal(g, target, k):
        raise ValueError("target must be a maximal k-biplex")
    cur = initial_solution(g, k)
    solutions = [cur]
    steps: list[PathStep] = []
    bound = g.n_left + g.n_right + 2
    while True:
        cur_left = set(cur.left)
        rest = t_left - cur_left
        if not rest:
            break
        v = min(rest)
        base_l = (t_left & cur_left) | {v}
        base_r = set(t_right)
        left_pool = sorted(cur_left - base_l)
        right_pool = sorted(set(cur.right) - base_r)
        lf, rf = extend_greedy(g, base_l, base_r, k, left_pool, right_pool)
        local = Biplex.of(lf, rf)
        nxt = extend_to_max(g, local, k, pool="all")
        steps.append(PathStep(v, local, nxt))
        solutions.append(nxt)
        cur = nxt
        if len(solutions) > bound:
            raise RuntimeError("path construction failed to converge")
    if cur != target:
        raise RuntimeError("path ended away from a maximal target")
    return PathTrace(tuple(solutions), tuple(steps))


def verify_run(
    g: BipartiteGraph,
    k: int,
    cfg: RunConfig | None = None,
    fault_hook=None,
) -> list[dict]:
    """Compare one traversal configuration against the exhaustive oracle.

    Returns one record per check: {"name", "pass", "witness"}. `fault_hook`
    may transform the emitted solution list before comparison (test hook).
    """
    cfg = replace(cfg or RunConfig(), k=k)
    expected = brute_force_mbps(g, k)
    expected_keys = {canonical_key(h) for h in expected}

    emitted: list[Biplex] = []
    stats = run_traversal(g, cfg, lambda h, i: emitted.append(h))
    if fault_hook is not None:
        emitted = fault_hook(emitted)
    got_keys = [canonical_key(h) for h in emitted]
    got_set = set(got_keys)

    report: list[dict] = []

    def check(name: str, ok: bool, witness) -> None:
        report.append({"name": name, "pass": bool(ok), "witness": witness})

    missing = [h for h in expected if canonical_key(h) not in got_set]
    extra = [h for h in emitted if canonical_key(h) not in expected_keys]
    check(
        "oracle_set_equality",
        not missing and not extra,
        {"missing": missing[:1], "extra": extra[:1]} if (missing or extra) else None,
    )
    dup = len(got_keys) != len(got_set)
    check("no_duplicates", not dup, None if not dup else "duplicate emission")
    bad = next((h for h in emitted if not is_maximal(g, h, k)), None)
    check("all_maximal", bad is None, bad)
    check(
        "delay_gap",
        stats.max_call_gap_between_outputs <= 2,
        stats.max_call_gap_between_outputs,
    )

    links = []
    for stage in _monotonic_stages(cfg):
        s = run_traversal(g, stage, lambda h, i: None)
        links.append(s.links_traversed)
    ordered = all(links[i] <= links[i + 1] for i in range(len(links) - 1))
    check("link_monotonicity", ordered, links if not ordered else None)
    return report


def _monotonic_stages(cfg: RunConfig) -> list[RunConfig]:
    """Most-pruned to least-pruned traversal configurations."""
    base = replace(cfg, limit=None, theta=None, theta_left=None, theta_right=None)
    return [
        replace(base, mode="i", right_shrinking=True, exclusion=True),
        replace(base, mode="i", right_shrinking=True, exclusion=False),
        replace(base, mode="i", right_shrinking=False, exclusion=False),
        replace(base, mode="b", exclusion=False),
    ]


def run_passed(report: list[dict]) -> bool:
    return all(r["pass"] for r in report)
