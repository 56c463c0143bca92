"""Enumeration of local solutions inside an almost-satisfying graph.

Given a k-biplex (L, R) and an outside left vertex v, a *local solution* is
an induced subgraph of (L + v, R) that contains v, is a k-biplex, and is
maximal within (L + v, R). The search space is organised as:

  * right picks: R' = r_keep + R''1 + R''2 where r_keep are the members of R
    adjacent to v (present in every local solution), R''1 are chosen among
    members missing at most k-1 of L, R''2 among members missing exactly k,
    and |R''1 + R''2| <= k caps v's misses;
  * left removals: a set lbar of at most |R''2| vertices taken from the
    members of L that miss something in R''2; removing lbar repairs the
    R''2 members, each of which would otherwise miss k+1 vertices.

Variant switches:
  * r2: skip right picks that are strictly smaller than k while unpicked
    R''1 candidates remain (no removal set can make those maximal);
  * l2: enumerate removal sets by ascending size and prune supersets of a
    removal set that already produced a local solution.

All four combinations yield the same set of local solutions; they differ
only in how much work is spent discarding non-solutions.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping

from .bigraph import BipartiteGraph
from .biplex import Biplex, is_kbiplex

VARIANTS: dict[str, tuple[bool, bool]] = {
    "l1r1": (False, False),
    "l1r2": (False, True),
    "l2r1": (True, False),
    "l2r2": (True, True),
}


def parse_variant(name: str) -> tuple[bool, bool]:
    try:
        return VARIANTS[name]
    except KeyError:
        raise ValueError(f"unknown variant {name!r}; expected one of {sorted(VARIANTS)}")


@dataclass(frozen=True)
class AlmostSatContext:
    """A base k-biplex plus an outside left-side anchor vertex."""

    base: Biplex
    anchor: int
    k: int


@dataclass(frozen=True)
class RPartition:
    """Three-way split of the base right side relative to the anchor."""

    r_keep: tuple[int, ...]
    r_enum1: tuple[int, ...]
    r_enum2: tuple[int, ...]


def partition_r(g: BipartiteGraph, ctx: AlmostSatContext) -> RPartition:
    """Split R into the anchor's neighbors (kept in every local solution)
    and the rest, graded by how many of L each vertex already misses."""
    l_set = set(ctx.base.left)
    nl = len(l_set)
    adjv = g.adj_left_sets[ctx.anchor]
    keep: list[int] = []
    e1: list[int] = []
    e2: list[int] = []
    for u in ctx.base.right:
        if u in adjv:
            keep.append(u)
        elif nl - len(g.adj_right_sets[u] & l_set) <= ctx.k - 1:
            e1.append(u)
        else:
            e2.append(u)
    return RPartition(tuple(keep), tuple(e1), tuple(e2))


def enum_r_subsets(
    p: RPartition, k: int, variant: str = "r2"
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All picks (R''1, R''2) with |R''1 + R''2| <= k.

    Under "r2", picks smaller than k are skipped while unpicked r_enum1
    vertices remain, since any such vertex could still be added.
    """
    if variant not in ("r1", "r2"):
        raise ValueError(f"unknown refinement {variant!r}; expected 'r1' or 'r2'")
    refine = variant == "r2"
    r1, r2 = p.r_enum1, p.r_enum2
    for s1 in range(min(k, len(r1)) + 1):
        leftover = s1 < len(r1)
        for c1 in combinations(r1, s1):
            for s2 in range(min(k - s1, len(r2)) + 1):
                if refine and leftover and s1 + s2 < k:
                    continue
                yield from ((c1, c2) for c2 in combinations(r2, s2))


def compute_l_remo(g: BipartiteGraph, left: tuple[int, ...], r2: tuple[int, ...]) -> tuple[int, ...]:
    """Members of `left` that miss at least one vertex of `r2`."""
    return tuple(
        w for w in left if any(u not in g.adj_left_sets[w] for u in r2)
    )


# -- the enumeration core ----------------------------------------------------
#
# The checks below rely on two monotonicity facts that hold inside an
# almost-satisfying graph built on a k-biplex (L, R):
#   * every w in L misses at most k vertices of any subset of R, so putting
#     a removed left vertex back can only be blocked by a right member that
#     is already at its miss bound and not adjacent to w;
#   * a right member at its miss bound within a pick is adjacent to every
#     unpicked member of R, so right additions are blocked exactly by the
#     anchor (when the pick is full) or by their own miss count.


def _pick_candidates(
    adj_a: tuple[frozenset[int], ...],
    adj_b: tuple[frozenset[int], ...],
    l_sorted: tuple[int, ...],
    miss_l: Mapping[int, int],
    v: int,
    k: int,
    refine_l: bool,
    refine_r: bool,
    keep_list: list[int],
    r1: list[int],
    r2: list[int],
    c1: tuple[int, ...],
    c2: tuple[int, ...],
    right_shrink_test,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Process one right pick: enumerate removal sets, filter to local
    solutions, then apply traversal-level skips."""
    size = len(c1) + len(c2)
    if c2:
        l_remo = [w for w in l_sorted if any(u not in adj_a[w] for u in c2)]
        max_rem = min(len(c2), len(l_remo))
    else:
        l_remo = []
        max_rem = 0
    rr = c1 + c2
    c2_misses: dict[int, int] = {}
    successes: list[set[int]] = []
    r_prime: tuple[int, ...] | None = None

    for size_l in range(max_rem + 1):
        for lbar in combinations(l_remo, size_l):
            lbar_set = set(lbar)
            if refine_l and any(s <= lbar_set for s in successes):
                continue
            # validity: every R''2 member must lose one of its missing
            # neighbours, otherwise it stays at k+1 misses
            valid = True
            for u2 in c2:
                m = sum(1 for w in lbar if w not in adj_b[u2])
                c2_misses[u2] = m
                if m == 0:
                    valid = False
                    break
            if not valid:
                continue
            # right additions: only possible while the pick is below k
            # (otherwise the anchor is at its bound and blocks everything)
            if size < k:
                if refine_r:
                    # surviving picks have r1 exhausted; an unpicked R''2
                    # member becomes addable iff a removal rescued it
                    if any(
                        u not in c2 and any(w not in adj_b[u] for w in lbar)
                        for u in r2
                    ):
                        continue
                else:
                    extendable = False
                    for u in r1:
                        if u not in c1 and (
                            miss_l[u] - sum(1 for w in lbar if w not in adj_b[u]) + 1 <= k
                        ):
                            extendable = True
                            break
                    if not extendable:
                        for u in r2:
                            if u not in c2 and any(w not in adj_b[u] for w in lbar):
                                extendable = True
                                break
                    if extendable:
                        continue
            # left re-additions: each removed vertex must be blocked by a
            # pick member already at its miss bound
            maximal = True
            for w in lbar:
                blocked = False
                for u2 in c2:
                    if c2_misses[u2] == 1 and w not in adj_b[u2]:
                        blocked = True
                        break
                if not blocked:
                    for u1 in c1:
                        mu = miss_l[u1] - sum(1 for x in lbar if x not in adj_b[u1]) + 1
                        if mu == k and w not in adj_b[u1]:
                            blocked = True
                            break
                if not blocked:
                    for u0 in keep_list:
                        mu = miss_l[u0] - sum(1 for x in lbar if x not in adj_b[u0])
                        if mu == k and w not in adj_b[u0]:
                            blocked = True
                            break
                if not blocked:
                    maximal = False
                    break
            if not maximal:
                continue
            if refine_l:
                successes.append(lbar_set)
            if right_shrink_test is not None and right_shrink_test(lbar_set, c1, c2, size):
                continue
            if r_prime is None:
                r_prime = tuple(sorted(keep_list + list(rr)))
            yield lbar, r_prime


class _AnchorScan:
    """Shared per-solution state for scanning anchors of one base (L, R)."""

    def __init__(
        self,
        adj_a_lists,
        adj_a_sets,
        adj_b_lists,
        adj_b_sets,
        n_b: int,
        l_sorted: tuple[int, ...],
        r_sorted: tuple[int, ...],
        k: int,
    ):
        self.adj_a_lists = adj_a_lists
        self.adj_a = adj_a_sets
        self.adj_b_lists = adj_b_lists
        self.adj_b = adj_b_sets
        self.n_b = n_b
        self.l_sorted = l_sorted
        self.l_set = frozenset(l_sorted)
        self.r_sorted = r_sorted
        self.r_set = frozenset(r_sorted)
        self.k = k
        self.miss_l = {
            u: len(l_sorted) - len(adj_b_sets[u] & self.l_set) for u in r_sorted
        }
        # members already at the bound relative to L; anchor-independent
        self.r_at_bound = tuple(u for u in r_sorted if self.miss_l[u] == k)

    # -- right-shrink filtering ------------------------------------------

    def _extendable_outside(self, lp_set: set[int], tights: list[int], size: int) -> bool:
        """True iff some right vertex outside R can join (L' + v, R').

        `tights` are the members of L' + v whose misses within R' equal k;
        such a vertex must be adjacent to the addition. Vertices of R
        outside the pick are never candidates here: the pick-level checks
        already rule them out.
        """
        adj_a_lists = self.adj_a_lists
        adj_b = self.adj_b
        r_set = self.r_set
        nl = len(lp_set)
        if not tights:
            if nl <= self.k:
                return self.n_b > len(r_set)
            need = nl - self.k
            cnt: dict[int, int] = {}
            for w in lp_set:
                for u in adj_a_lists[w]:
                    if u not in r_set:
                        cnt[u] = cnt.get(u, 0) + 1
            return any(c >= need for c in cnt.values())
        t = min(tights, key=lambda w: len(adj_a_lists[w]))
        adj_a = self.adj_a
        for u in adj_a_lists[t]:
            if u in r_set:
                continue
            if nl - len(adj_b[u] & lp_set) > self.k:
                continue
            if all(u in adj_a[w] for w in tights if w != t):
                return True
        return False

    def locals_for_anchor(
        self,
        v: int,
        refine_l: bool,
        refine_r: bool,
        *,
        right_shrink: bool = False,
        theta_anchor: int = 0,
        theta_pick: int = 0,
    ) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Yield (removed_left, R') per surviving local solution of anchor v."""
        adj_a = self.adj_a
        adjv = adj_a[v]
        r_set = self.r_set
        r_sorted = self.r_sorted
        k = self.k
        if len(adjv) <= len(r_sorted):
            keep_list = sorted(adjv & r_set)
        else:
            keep_list = [u for u in r_sorted if u in adjv]
        nk = len(keep_list)
        if theta_anchor and nk + k < theta_anchor:
            return
        l_sorted = self.l_sorted
        miss_l = self.miss_l

        if right_shrink and refine_r and k == 1:
            yield from self._fast_anchor_k1(v, adjv, keep_list, nk, theta_pick, refine_l)
            return

        keep_set = frozenset(keep_list)
        r1: list[int] = []
        r2: list[int] = []
        for u in r_sorted:
            if u in adjv:
                continue
            if miss_l[u] <= k - 1:
                r1.append(u)
            else:
                r2.append(u)

        shrink_test = None
        if right_shrink:
            cnt_keep = {w: len(adj_a[w] & keep_set) for w in l_sorted}

            def shrink_test(lbar_set, c1, c2, size):
                rp_size = nk + size
                tights = [v] if size == k else []
                for w in l_sorted:
                    if w in lbar_set:
                        continue
                    cw = cnt_keep[w]
                    cw += sum(1 for u in c1 if u in adj_a[w])
                    cw += sum(1 for u in c2 if u in adj_a[w])
                    if rp_size - cw == k:
                        tights.append(w)
                lp_set = (self.l_set - lbar_set) | {v}
                return self._extendable_outside(lp_set, tights, size)

        len_r1 = len(r1)
        for s1 in range(min(k, len_r1) + 1):
            leftover = s1 < len_r1
            for c1 in combinations(r1, s1):
                for s2 in range(min(k - s1, len(r2)) + 1):
                    if refine_r and leftover and s1 + s2 < k:
                        continue
                    if theta_pick and nk + s1 + s2 < theta_pick:
                        continue
                    for c2 in combinations(r2, s2):
                        yield from _pick_candidates(
                            adj_a,
                            self.adj_b,
                            l_sorted,
                            miss_l,
                            v,
                            k,
                            refine_l,
                            refine_r,
                            keep_list,
                            r1,
                            r2,
                            c1,
                            c2,
                            shrink_test,
                        )

    def _fast_anchor_k1(
        self,
        v: int,
        adjv: frozenset[int],
        keep_list: list[int],
        nk: int,
        theta_pick: int,
        refine_l: bool,
    ) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        """k == 1 with right-shrink filtering: singleton picks only.

        Picks from the zero-miss pool share one tight set ({v} plus the base
        members left with one miss by r_keep alone), so a single scan of the
        anchor's outside neighbourhood settles the whole family.
        """
        adj_a = self.adj_a
        adj_b = self.adj_b
        l_set = self.l_set
        l_sorted = self.l_sorted
        r_set = self.r_set
        r_sorted = self.r_sorted
        miss_l = self.miss_l
        r2 = [u for u in self.r_at_bound if u not in adjv]
        n_r1 = len(r_sorted) - nk - len(r2)
        if n_r1 == 0:
            # empty pick may be retained; fall back to the general machinery
            yield from self._general_k1_no_r1(
                v, adjv, keep_list, nk, theta_pick, refine_l, r2
            )
            return
        if not theta_pick or nk + 1 >= theta_pick:
            keep_set = frozenset(keep_list)
            t1 = [w for w in l_sorted if nk - len(adj_a[w] & keep_set) == 1]
            nl = len(l_set)
            pruned = False
            for u_star in self.adj_a_lists[v]:
                if u_star in r_set:
                    continue
                if nl - len(adj_b[u_star] & l_set) > 1:
                    continue
                if all(u_star in adj_a[w] for w in t1):
                    pruned = True
                    break
            if not pruned:
                for u in r_sorted:
                    if u not in adjv and miss_l[u] == 0:
                        rp = list(keep_list)
                        bisect.insort(rp, u)
                        yield (), tuple(rp)
        # bound-miss singletons need a removal; handled per candidate
        if theta_pick and nk + 1 < theta_pick:
            return
        shrink = self._shrink_test_general(v, keep_list, nk)
        for u2 in r2:
            yield from _pick_candidates(
                adj_a, adj_b, l_sorted, miss_l,
                v, 1, refine_l, True, keep_list, [], r2, (), (u2,), shrink,
            )

    def _general_k1_no_r1(self, v, adjv, keep_list, nk, theta_pick, refine_l, r2):
        shrink = self._shrink_test_general(v, keep_list, nk)
        if not (theta_pick and nk < theta_pick):
            yield from _pick_candidates(
                self.adj_a, self.adj_b, self.l_sorted, self.miss_l,
                v, 1, refine_l, True, keep_list, [], r2, (), (), shrink,
            )
        if theta_pick and nk + 1 < theta_pick:
            return
        for u2 in r2:
            yield from _pick_candidates(
                self.adj_a, self.adj_b, self.l_sorted, self.miss_l,
                v, 1, refine_l, True, keep_list, [], r2, (), (u2,), shrink,
            )

    def _shrink_test_general(self, v: int, keep_list: list[int], nk: int):
        adj_a = self.adj_a
        keep_set = frozenset(keep_list)
        cnt_keep = {w: len(adj_a[w] & keep_set) for w in self.l_sorted}
        k = self.k

        def test(lbar_set, c1, c2, size):
            rp_size = nk + size
            tights = [v] if size == k else []
            for w in self.l_sorted:
                if w in lbar_set:
                    continue
                cw = cnt_keep[w]
                cw += sum(1 for u in c1 if u in adj_a[w])
                cw += sum(1 for u in c2 if u in adj_a[w])
                if rp_size - cw == k:
                    tights.append(w)
            lp_set = (self.l_set - lbar_set) | {v}
            return self._extendable_outside(lp_set, tights, size)

        return test


def _scan_for(g: BipartiteGraph, base: Biplex, k: int) -> _AnchorScan:
    return _AnchorScan(
        g.adj_left, g.adj_left_sets, g.adj_right, g.adj_right_sets,
        g.n_right, base.left, base.right, k,
    )


def enum_almost_sat(
    g: BipartiteGraph,
    ctx: AlmostSatContext,
    variant: str = "l2r2",
    check_invariants: bool = False,
) -> Iterator[Biplex]:
    """All local solutions containing the anchor within (L + v, R).

    With `check_invariants`, each right pick is re-verified from adjacency:
    within (L + v, R') every vertex must stay within k misses except the
    R''2 members, which must sit at exactly k + 1 before removals repair
    them. A violation raises AssertionError.
    """
    refine_l, refine_r = parse_variant(variant)
    left, right = ctx.base.vertex_sets()
    if not is_kbiplex(g, left, right, ctx.k):
        raise ValueError("context base is not a k-biplex")
    if ctx.anchor in left or not (0 <= ctx.anchor < g.n_left):
        raise ValueError("anchor must be a left vertex outside the base")
    scan = _scan_for(g, ctx.base, ctx.k)
    v = ctx.anchor
    for lbar, r_prime in scan.locals_for_anchor(v, refine_l, refine_r):
        if check_invariants:
            _assert_pick_misses(g, left, v, r_prime, lbar, ctx.k)
        yield Biplex.of((left - set(lbar)) | {v}, r_prime)


def _assert_pick_misses(g, left, v, r_prime, lbar, k):
    full_left = left | {v}
    nl = len(full_left)
    for u in r_prime:
        m = nl - len(g.adj_right_sets[u] & full_left)
        rescued = sum(1 for w in lbar if w not in g.adj_right_sets[u])
        if m > k:
            assert m == k + 1, (
                f"pick member {u} misses {m} of the anchor-side base; "
                f"only k+1 is repairable"
            )
            assert rescued >= 1, f"pick member {u} at k+1 misses was not repaired"
