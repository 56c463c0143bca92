"""k-biplex predicates, maximality, deterministic extension and encoding.

A k-biplex (L, R) is an induced subgraph where every vertex misses at most k
vertices of the opposite side. All operations here are pure functions of an
immutable graph.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterable

from .bigraph import BipartiteGraph, Side


@dataclass(frozen=True)
class Biplex:
    """A pair of sorted, duplicate-free vertex-id sets (left, right)."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    @classmethod
    def of(cls, left: Iterable[int], right: Iterable[int]) -> "Biplex":
        return cls(tuple(sorted(set(left))), tuple(sorted(set(right))))

    @property
    def size(self) -> int:
        return len(self.left) + len(self.right)

    def vertex_sets(self) -> tuple[set[int], set[int]]:
        return set(self.left), set(self.right)


def canonical_key(h: Biplex) -> bytes:
    """Injective, order-stable byte encoding of a biplex: |L|, L, |R|, R."""
    nl, nr = len(h.left), len(h.right)
    return struct.pack(f">I{nl}I", nl, *h.left) + struct.pack(f">I{nr}I", nr, *h.right)


def _require_k(k: int) -> None:
    if k < 1:
        raise ValueError("k must be a positive integer")


def is_kbiplex(
    g: BipartiteGraph,
    left: Iterable[int],
    right: Iterable[int],
    k: int,
    k_right: int | None = None,
) -> bool:
    """True iff every left vertex misses at most `k` of `right` and every
    right vertex misses at most `k_right` (default `k`) of `left`."""
    _require_k(k)
    kr = k if k_right is None else k_right
    left_set, right_set = set(left), set(right)
    nr = len(right_set)
    for v in left_set:
        if nr - len(g.adj_left_sets[v] & right_set) > k:
            return False
    nl = len(left_set)
    for u in right_set:
        if nl - len(g.adj_right_sets[u] & left_set) > kr:
            return False
    return True


# -- greedy extension --------------------------------------------------------


def _candidate_pool(
    g: BipartiteGraph,
    side: Side,
    opposite: set[int],
    exclude: set[int],
    bound: int,
) -> list[int]:
    """Vertices of `side` outside `exclude` that miss at most `bound` members
    of `opposite`, ascending. Uses neighbor counting when the threshold is
    positive so sparse graphs are not scanned in full."""
    need = len(opposite) - bound
    n = g.side_count(side)
    if need <= 0:
        return [w for w in range(n) if w not in exclude]
    if len(opposite) == g.side_count(side.opposite):
        # opposite side is complete: degree test suffices
        return [
            w
            for w in range(n)
            if w not in exclude and g.degree(side, w) >= need
        ]
    adj = g.adj_right if side is Side.LEFT else g.adj_left
    cnt: dict[int, int] = {}
    for u in opposite:
        for w in adj[u]:
            cnt[w] = cnt.get(w, 0) + 1
    return sorted(w for w, c in cnt.items() if c >= need and w not in exclude)


class _Extender:
    """Incremental state for greedy maximal extension.

    Tracks per-vertex miss counts on both sides; a vertex is addable when its
    own misses stay within bound and every opposite vertex already at its
    bound is adjacent to it. Both quantities are monotone under insertion, so
    one ascending pass per side yields a maximal superset.
    """

    def __init__(self, g: BipartiteGraph, left: set[int], right: set[int], k: int, kr: int):
        self.g = g
        self.left = set(left)
        self.right = set(right)
        self.k = k
        self.kr = kr
        self.miss_left = {
            w: len(self.right) - len(g.adj_left_sets[w] & self.right) for w in self.left
        }
        self.miss_right = {
            u: len(self.left) - len(g.adj_right_sets[u] & self.left) for u in self.right
        }
        self.tight_left = {w for w, m in self.miss_left.items() if m == k}
        self.tight_right = {u for u, m in self.miss_right.items() if m == kr}

    def try_add_left(self, w: int) -> bool:
        g = self.g
        adj = g.adj_left_sets[w]
        if len(self.right) - len(adj & self.right) > self.k:
            return False
        for u in self.tight_right:
            if u not in adj:
                return False
        self.left.add(w)
        mw = len(self.right) - len(adj & self.right)
        self.miss_left[w] = mw
        if mw == self.k:
            self.tight_left.add(w)
        for u in self.right - adj:
            m = self.miss_right[u] + 1
            self.miss_right[u] = m
            if m == self.kr:
                self.tight_right.add(u)
        return True

    def try_add_right(self, u: int) -> bool:
        g = self.g
        adj = g.adj_right_sets[u]
        if len(self.left) - len(adj & self.left) > self.kr:
            return False
        for w in self.tight_left:
            if w not in adj:
                return False
        self.right.add(u)
        mu = len(self.left) - len(adj & self.left)
        self.miss_right[u] = mu
        if mu == self.kr:
            self.tight_right.add(u)
        for w in self.left - adj:
            m = self.miss_left[w] + 1
            self.miss_left[w] = m
            if m == self.k:
                self.tight_left.add(w)
        return True


def extend_greedy(
    g: BipartiteGraph,
    left: set[int],
    right: set[int],
    k: int,
    left_pool: Iterable[int] | None,
    right_pool: Iterable[int] | None,
    k_right: int | None = None,
) -> tuple[set[int], set[int]]:
    """Add pool vertices in order (left pool first) whenever the k-biplex
    property is preserved. Pools of None mean "no candidates on that side"."""
    kr = k if k_right is None else k_right
    ext = _Extender(g, left, right, k, kr)
    if left_pool is not None:
        for w in left_pool:
            if w not in ext.left:
                ext.try_add_left(w)
    if right_pool is not None:
        for u in right_pool:
            if u not in ext.right:
                ext.try_add_right(u)
    return ext.left, ext.right


def extend_to_max(g: BipartiteGraph, h: Biplex, k: int, pool: str = "all") -> Biplex:
    """Deterministically extend `h` to a maximal superset.

    pool="all" scans left candidates ascending then right candidates
    ascending; pool="left" adds left vertices only (the result is maximal in
    the whole graph provided no right vertex could extend the input).
    """
    _require_k(k)
    if pool not in ("all", "left"):
        raise ValueError(f"unknown pool {pool!r}")
    left, right = h.vertex_sets()
    if not is_kbiplex(g, left, right, k):
        raise ValueError("input is not a k-biplex")
    left_pool = _candidate_pool(g, Side.LEFT, right, left, k)
    if pool == "left":
        lf, rf = extend_greedy(g, left, right, k, left_pool, None)
    else:
        lf, rf = extend_greedy(g, left, right, k, left_pool, None)
        right_pool = _candidate_pool(g, Side.RIGHT, lf, rf, k)
        lf, rf = extend_greedy(g, lf, rf, k, None, right_pool)
    return Biplex.of(lf, rf)


def is_maximal(g: BipartiteGraph, h: Biplex, k: int) -> bool:
    """True iff no single outside vertex can be added while keeping the
    k-biplex property (sufficient by the hereditary structure)."""
    _require_k(k)
    left, right = h.vertex_sets()
    if not is_kbiplex(g, left, right, k):
        raise ValueError("input is not a k-biplex")
    ext = _Extender(g, left, right, k, k)
    for w in _candidate_pool(g, Side.LEFT, right, left, k):
        adj = g.adj_left_sets[w]
        if len(right) - len(adj & right) <= k and all(
            u in adj for u in ext.tight_right
        ):
            return False
    for u in _candidate_pool(g, Side.RIGHT, left, right, k):
        adj = g.adj_right_sets[u]
        if len(left) - len(adj & left) <= k and all(w in adj for w in ext.tight_left):
            return False
    return True


def initial_solution(g: BipartiteGraph, k: int) -> Biplex:
    """Starting point for traversal: (L0, R-all) where L0 is the greedy
    maximal left set keeping the k-biplex property; the result is maximal."""
    _require_k(k)
    right = set(range(g.n_right))
    left_pool = _candidate_pool(g, Side.LEFT, right, set(), k)
    lf, rf = extend_greedy(g, set(), right, k, left_pool, None)
    return Biplex.of(lf, rf)
