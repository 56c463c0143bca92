"""Size-constrained enumeration: only solutions with both sides of size at
least theta, found without enumerating everything.

The improved traversal only ever shrinks the right side along links, so
anchors, right picks and recursion can all be cut against the threshold; a
degree-core peel shrinks the graph up front since a solution with |L| >= tl
and |R| >= tr keeps every left degree >= tr - k and right degree >= tl - k.
"""

from __future__ import annotations

from dataclasses import replace

from .bigraph import BipartiteGraph, core_decompose
from .biplex import Biplex
from .traversal import RunConfig, RunStats, Sink, run_traversal


def enumerate_large(
    g: BipartiteGraph,
    k: int,
    theta: int,
    cfg: RunConfig | None = None,
    sink: Sink = lambda h, i: None,
) -> RunStats:
    """Emit exactly the maximal k-biplexes of `g` with both sides >= theta
    (or the per-side thresholds of `cfg`, when set)."""
    if theta < 1:
        raise ValueError("theta must be at least 1")
    cfg = cfg or RunConfig()
    theta_l = cfg.theta_left if cfg.theta_left is not None else theta
    theta_r = cfg.theta_right if cfg.theta_right is not None else theta
    cfg = replace(
        cfg, k=k, mode="i", theta=None, theta_left=theta_l, theta_right=theta_r
    )
    need_left = theta_r - k  # left members see at least |R| - k >= tr - k edges
    need_right = theta_l - k
    if need_left > 0 or need_right > 0:
        core, (map_l, map_r) = core_decompose(
            g, max(0, need_left), max(0, need_right)
        )

        def remap_sink(h: Biplex, idx: int):
            return sink(
                Biplex(
                    tuple(map_l[v] for v in h.left),
                    tuple(map_r[u] for u in h.right),
                ),
                idx,
            )

        return run_traversal(core, cfg, remap_sink)
    return run_traversal(g, cfg, sink)
