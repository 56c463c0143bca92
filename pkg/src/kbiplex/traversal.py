"""Reverse-search drivers for maximal k-biplex enumeration.

Both drivers walk an implicit solution graph depth-first starting from the
solution (L0, R-all): from each known solution they build almost-satisfying
graphs by adding one outside anchor vertex, enumerate local solutions, extend
each to a maximal one and recurse on the ones not seen before.

  * baseline mode ("b"): anchors on both sides, no filtering, extension over
    all vertices;
  * improved mode ("i"): left-side anchors only; optionally discards local
    solutions that some outside right vertex could extend (so recursion only
    ever shrinks the right side) and then extends with left vertices only;
    optionally skips anchors already finished along the current branch (the
    exclusion set, inherited by each newly discovered solution).

Solutions are reported alternately before or after the recursive expansion of
each new solution, which keeps at least one report in every two consecutive
expansions; recursion is run on an explicit stack so chains of solutions
longer than the interpreter limit are safe.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable, Iterator

from .bigraph import BipartiteGraph, Side
from .biplex import (
    Biplex,
    canonical_key,
    extend_greedy,
    initial_solution,
    is_kbiplex,
    _candidate_pool,
)
from .localenum import _AnchorScan, _scan_for, parse_variant

Sink = Callable[[Biplex, int], object]


@dataclass
class RunConfig:
    k: int = 1
    mode: str = "i"  # "b" | "i"
    variant: str = "l2r2"
    anchor_side: str = "left"  # "left" | "right"
    right_shrinking: bool = True  # "i" only: keep right-shrinking links only
    exclusion: bool = True
    theta: int | None = None
    theta_left: int | None = None
    theta_right: int | None = None
    limit: int | None = None
    collect_stats: bool = True
    # size-constrained pruning toggles; active only when a theta is set and
    # the traversal is right-shrinking
    prune_anchor: bool = True
    prune_rfloor: bool = True
    prune_solution: bool = True
    prune_exclusion: bool = True

    def thresholds(self) -> tuple[int, int]:
        tl = self.theta_left if self.theta_left is not None else (self.theta or 0)
        tr = self.theta_right if self.theta_right is not None else (self.theta or 0)
        return tl, tr


@dataclass
class RunStats:
    solutions: int = 0
    links_traversed: int = 0
    recursive_calls: int = 0
    max_call_gap_between_outputs: int = 0
    wall_delay_max: float = 0.0
    store_size: int = 0


class SolutionStore:
    """Insertion-ordered map from canonical solution keys to discovery index."""

    def __init__(self):
        self._index: dict[bytes, int] = {}

    def add(self, key: bytes) -> bool:
        """Idempotent insert; True iff the key was new."""
        if key in self._index:
            return False
        self._index[key] = len(self._index)
        return True

    def __contains__(self, key: bytes) -> bool:
        return key in self._index

    def __len__(self) -> int:
        return len(self._index)

    def keys(self):
        return self._index.keys()


def right_shrinking_check(g: BipartiteGraph, h_loc: Biplex, k: int) -> bool:
    """True iff some right vertex outside h_loc keeps the k-biplex property
    when added (the local solution would grow the right side again).

    Only vertices missing at most k of the left side can qualify, and every
    left member already at k misses must be adjacent to the addition.
    """
    left, right = h_loc.vertex_sets()
    if not is_kbiplex(g, left, right, k):
        raise ValueError("input is not a k-biplex")
    nl = len(left)
    tight = [
        w for w in left if len(right) - len(g.adj_left_sets[w] & right) == k
    ]
    for u in _candidate_pool(g, Side.RIGHT, left, right, k):
        adj = g.adj_right_sets[u]
        if nl - len(adj & left) > k:
            continue
        if all(w in adj for w in tight):
            return True
    return False


# -- engine ------------------------------------------------------------------


class _Frame:
    __slots__ = ("sol", "gen", "depth", "emit_on_pop")

    def __init__(self, sol, gen, depth, emit_on_pop):
        self.sol = sol
        self.gen = gen
        self.depth = depth
        self.emit_on_pop = emit_on_pop


class _Engine:
    """One traversal run over a fixed-orientation graph."""

    def __init__(self, g: BipartiteGraph, cfg: RunConfig, sink: Sink,
                 theta_l: int, theta_r: int):
        self.g = g
        self.gt = g.transposed() if cfg.mode == "b" else None
        self.cfg = cfg
        self.k = cfg.k
        self.sink = sink
        self.refine_l, self.refine_r = parse_variant(cfg.variant)
        self.mode_b = cfg.mode == "b"
        self.right_shrink = (not self.mode_b) and cfg.right_shrinking
        self.extension_all = self.mode_b or not self.right_shrink
        # anchor exclusion belongs to the improved traversal; the baseline
        # expands every anchor unconditionally
        self.use_excl = cfg.exclusion and not self.mode_b
        self.theta_l = theta_l
        self.theta_r = theta_r
        pruning = bool(theta_l or theta_r) and self.right_shrink
        self.th_anchor = theta_r if (pruning and cfg.prune_anchor) else 0
        self.th_pick = theta_r if (pruning and cfg.prune_rfloor) else 0
        self.th_solution = theta_r if (pruning and cfg.prune_solution) else 0
        self.th_excl = (
            theta_l if (pruning and cfg.prune_exclusion and self.use_excl) else 0
        )
        self.store = SolutionStore()
        self.stats = RunStats()
        self.stopped = False
        self._calls_since_emit = 0
        self._emitted = 0
        self._last_emit_time: float | None = None
        self._t0 = time.perf_counter()

    # -- emission --------------------------------------------------------

    def _emit(self, sol: tuple[tuple[int, ...], tuple[int, ...]]) -> None:
        if self.stopped:
            return
        l_t, r_t = sol
        if len(l_t) < self.theta_l or len(r_t) < self.theta_r:
            return
        stats = self.stats
        stats.max_call_gap_between_outputs = max(
            stats.max_call_gap_between_outputs, self._calls_since_emit
        )
        self._calls_since_emit = 0
        now = time.perf_counter()
        prev = self._last_emit_time if self._last_emit_time is not None else self._t0
        stats.wall_delay_max = max(stats.wall_delay_max, now - prev)
        self._last_emit_time = now
        stats.solutions += 1
        idx = self._emitted
        self._emitted += 1
        res = self.sink(Biplex(l_t, r_t), idx)
        if res is False:
            self.stopped = True
        elif self.cfg.limit is not None and self._emitted >= self.cfg.limit:
            self.stopped = True

    # -- expansion of one solution ----------------------------------------

    def _expand(self, sol, excl: set[int]) -> Iterator:
        """Yield (child_solution, child_exclusion_snapshot) for every new
        solution discovered from `sol`. Mutates this frame's exclusion set
        as anchors finish."""
        yield from self._side_pass(sol, excl, swapped=False)
        if self.mode_b:
            yield from self._side_pass(sol, excl, swapped=True)

    def _side_pass(self, sol, excl: set[int], swapped: bool) -> Iterator:
        g = self.g
        l_t, r_t = sol
        if swapped:
            gv = self.gt
            base = Biplex(r_t, l_t)
        else:
            gv = g
            base = Biplex(l_t, r_t)
        scan = _scan_for(gv, base, self.k)
        l_set = scan.l_set
        r_set = scan.r_set
        use_excl = self.use_excl and not swapped
        stats = self.stats
        k = self.k
        for v in range(gv.n_left):
            if self.stopped:
                return
            if v in l_set or (use_excl and v in excl):
                continue
            for lbar, r_prime in scan.locals_for_anchor(
                v,
                self.refine_l,
                self.refine_r,
                right_shrink=self.right_shrink,
                theta_anchor=self.th_anchor if not swapped else 0,
                theta_pick=self.th_pick if not swapped else 0,
            ):
                if self.stopped:
                    return
                stats.links_traversed += 1
                lp = set(l_set)
                lp.difference_update(lbar)
                lp.add(v)
                rp = set(r_prime)
                if self.extension_all:
                    if swapped:
                        real_l, real_r = rp, lp
                    else:
                        real_l, real_r = lp, rp
                    pool_l = _candidate_pool(g, Side.LEFT, real_r, real_l, k)
                    fl, fr = extend_greedy(g, real_l, real_r, k, pool_l, None)
                    pool_r = _candidate_pool(g, Side.RIGHT, fl, fr, k)
                    fl, fr = extend_greedy(g, fl, fr, k, None, pool_r)
                else:
                    pool_l = _candidate_pool(gv, Side.LEFT, rp, lp, k)
                    fl, fr = extend_greedy(gv, lp, rp, k, pool_l, None)
                    if __debug__:
                        assert fr <= r_set, "link grew the shrinking side"
                    if swapped:
                        fl, fr = fr, fl
                child = (tuple(sorted(fl)), tuple(sorted(fr)))
                key = canonical_key(Biplex(*child))
                if self.store.add(key):
                    yield child, set(excl)
            if use_excl:
                excl.add(v)

    # -- driver ------------------------------------------------------------

    def run(self) -> RunStats:
        h0 = initial_solution(self.g, self.k)
        root = (h0.left, h0.right)
        self.store.add(canonical_key(h0))
        self._emit(root)  # depth 0 reports before its expansion
        stack = [_Frame(root, self._expand(root, set()), 0, emit_on_pop=False)]
        self.stats.recursive_calls += 1
        self._calls_since_emit += 1
        while stack:
            if self.stopped:
                break
            frame = stack[-1]
            item = next(frame.gen, None)
            if item is None:
                stack.pop()
                if frame.emit_on_pop:
                    self._emit(frame.sol)
                continue
            child, cexcl = item
            depth = frame.depth + 1
            pre = depth % 2 == 0
            if pre:
                self._emit(child)
            if self.stopped:
                break
            recurse = True
            if self.th_solution and len(child[1]) < self.th_solution:
                recurse = False
            if self.th_excl and (self.g.n_left - len(cexcl)) < self.th_excl:
                recurse = False
            if recurse:
                stack.append(
                    _Frame(
                        child,
                        self._expand(child, cexcl),
                        depth,
                        emit_on_pop=not pre,
                    )
                )
                self.stats.recursive_calls += 1
                self._calls_since_emit += 1
            elif not pre:
                self._emit(child)
        self.stats.max_call_gap_between_outputs = max(
            self.stats.max_call_gap_between_outputs, self._calls_since_emit
        )
        self.stats.store_size = len(self.store)
        return self.stats


def _run(g: BipartiteGraph, cfg: RunConfig, sink: Sink) -> RunStats:
    if cfg.k < 1:
        raise ValueError("k must be a positive integer")
    if cfg.mode not in ("b", "i"):
        raise ValueError(f"unknown mode {cfg.mode!r}")
    if cfg.anchor_side not in ("left", "right"):
        raise ValueError(f"unknown anchor side {cfg.anchor_side!r}")
    if cfg.limit is not None and cfg.limit < 1:
        raise ValueError("limit must be at least 1")
    theta_l, theta_r = cfg.thresholds()
    if cfg.anchor_side == "right":
        gv = g.transposed()

        def swapped_sink(h: Biplex, idx: int):
            return sink(Biplex(h.right, h.left), idx)

        return _Engine(gv, cfg, swapped_sink, theta_r, theta_l).run()
    return _Engine(g, cfg, sink, theta_l, theta_r).run()


def b_traversal(g: BipartiteGraph, cfg: RunConfig, sink: Sink) -> RunStats:
    """Baseline reverse search: both-side anchors, no link filtering."""
    if cfg.mode != "b":
        raise ValueError("b_traversal requires cfg.mode == 'b'")
    return _run(g, cfg, sink)


def i_traversal(g: BipartiteGraph, cfg: RunConfig, sink: Sink) -> RunStats:
    """Improved traversal: left anchors, right-shrinking links, exclusion."""
    if cfg.mode != "i":
        raise ValueError("i_traversal requires cfg.mode == 'i'")
    return _run(g, cfg, sink)


def run_traversal(g: BipartiteGraph, cfg: RunConfig, sink: Sink) -> RunStats:
    return _run(g, cfg, sink)


def collect_mbps(g: BipartiteGraph, cfg: RunConfig) -> tuple[list[Biplex], RunStats]:
    """Convenience wrapper: run and gather emitted solutions in order."""
    out: list[Biplex] = []
    stats = _run(g, cfg, lambda h, i: out.append(h))
    return out, stats


def make_config(**kwargs) -> RunConfig:
    return replace(RunConfig(), **kwargs)
