"""Bipartite graph container, edge-list IO, core peeling and a seeded generator."""

from __future__ import annotations

import heapq
import io
import random
from enum import Enum
from typing import IO, Iterable, Iterator


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class ParseError(ValueError):
    """Raised when an edge-list line cannot be parsed."""


class BipartiteGraph:
    """Immutable bipartite graph with dense 0-based vertex ids per side.

    Adjacency is kept both as sorted tuples (deterministic iteration) and as
    frozensets (membership and fast intersections). Instances are safe to
    share across threads once constructed.
    """

    __slots__ = (
        "n_left",
        "n_right",
        "adj_left",
        "adj_right",
        "adj_left_sets",
        "adj_right_sets",
        "labels_left",
        "labels_right",
        "num_edges",
    )

    def __init__(
        self,
        n_left: int,
        n_right: int,
        edges: Iterable[tuple[int, int]],
        labels_left: tuple[str, ...] | None = None,
        labels_right: tuple[str, ...] | None = None,
    ):
        if n_left < 0 or n_right < 0:
            raise ValueError("vertex counts must be non-negative")
        adj_l: list[set[int]] = [set() for _ in range(n_left)]
        adj_r: list[set[int]] = [set() for _ in range(n_right)]
        m = 0
        for v, u in edges:
            if not (0 <= v < n_left and 0 <= u < n_right):
                raise ValueError(f"edge ({v}, {u}) out of range")
            if u not in adj_l[v]:
                adj_l[v].add(u)
                adj_r[u].add(v)
                m += 1
        self.n_left = n_left
        self.n_right = n_right
        self.adj_left = tuple(tuple(sorted(s)) for s in adj_l)
        self.adj_right = tuple(tuple(sorted(s)) for s in adj_r)
        self.adj_left_sets = tuple(frozenset(s) for s in adj_l)
        self.adj_right_sets = tuple(frozenset(s) for s in adj_r)
        self.labels_left = labels_left
        self.labels_right = labels_right
        self.num_edges = m

    # -- basic accessors -------------------------------------------------

    def side_count(self, side: Side) -> int:
        return self.n_left if side is Side.LEFT else self.n_right

    def neighbors(self, side: Side, v: int) -> tuple[int, ...]:
        adj = self.adj_left if side is Side.LEFT else self.adj_right
        return adj[v]

    def neighbor_set(self, side: Side, v: int) -> frozenset[int]:
        adj = self.adj_left_sets if side is Side.LEFT else self.adj_right_sets
        return adj[v]

    def degree(self, side: Side, v: int) -> int:
        return len(self.neighbors(side, v))

    def label(self, side: Side, v: int) -> str:
        labels = self.labels_left if side is Side.LEFT else self.labels_right
        if labels is not None:
            return labels[v]
        return ("L" if side is Side.LEFT else "R") + str(v)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, nbrs in enumerate(self.adj_left):
            for u in nbrs:
                yield v, u

    def transposed(self) -> "BipartiteGraph":
        """Graph with the two sides swapped; shares adjacency storage."""
        g = object.__new__(BipartiteGraph)
        g.n_left = self.n_right
        g.n_right = self.n_left
        g.adj_left = self.adj_right
        g.adj_right = self.adj_left
        g.adj_left_sets = self.adj_right_sets
        g.adj_right_sets = self.adj_left_sets
        g.labels_left = self.labels_right
        g.labels_right = self.labels_left
        g.num_edges = self.num_edges
        return g

    # -- neighborhood queries --------------------------------------------

    def _check_members(self, side: Side, members: Iterable[int]) -> None:
        n = self.side_count(side)
        for x in members:
            if not (0 <= x < n):
                raise ValueError(f"vertex {x} is not a valid {side.value}-side id")

    def gamma(self, side: Side, w: int, members: Iterable[int]) -> set[int]:
        """Neighbors of `w` (on `side`) among `members` of the opposite side."""
        if not (0 <= w < self.side_count(side)):
            raise ValueError(f"vertex {w} is not a valid {side.value}-side id")
        members = set(members)
        self._check_members(side.opposite, members)
        return set(self.neighbor_set(side, w) & members)

    def delta(self, side: Side, w: int, members: Iterable[int]) -> int:
        return len(self.gamma(side, w, members))

    def bar_delta(self, side: Side, w: int, members: Iterable[int]) -> int:
        members = set(members)
        return len(members) - len(self.gamma(side, w, members))

    def __repr__(self) -> str:
        return (
            f"BipartiteGraph(n_left={self.n_left}, n_right={self.n_right}, "
            f"edges={self.num_edges})"
        )


# -- loading and writing ---------------------------------------------------


def _open_lines(source) -> Iterable[str]:
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        yield from source
    else:
        yield from source


def load_edge_list(source: str | IO[str] | Iterable[str], fmt: str = "plain") -> BipartiteGraph:
    """Load a bipartite edge list.

    `plain`: one edge per line "<left> <right>", '#'-prefixed comments allowed.
    `konect`: '%'-prefixed header lines skipped, first two columns used.

    Ids are assigned densely per side in first-appearance order; duplicate
    edges collapse. Labels keep the original tokens.
    """
    if fmt not in ("plain", "konect"):
        raise ValueError(f"unknown format {fmt!r}")
    comment = "#" if fmt == "plain" else "%"
    left_ids: dict[str, int] = {}
    right_ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(_open_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(comment):
            continue
        tokens = stripped.split()
        if fmt == "plain" and len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        if len(tokens) < 2:
            raise ParseError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        a, b = tokens[0], tokens[1]
        v = left_ids.setdefault(a, len(left_ids))
        u = right_ids.setdefault(b, len(right_ids))
        edges.append((v, u))
    return BipartiteGraph(
        len(left_ids),
        len(right_ids),
        edges,
        labels_left=tuple(left_ids),
        labels_right=tuple(right_ids),
    )


def write_edge_list(g: BipartiteGraph, out: IO[str]) -> None:
    """Write `g` in plain format using its labels."""
    for v, u in g.edges():
        out.write(f"{g.label(Side.LEFT, v)} {g.label(Side.RIGHT, u)}\n")


# -- core decomposition -----------------------------------------------------


def core_decompose(
    g: BipartiteGraph, d_left: int, d_right: int
) -> tuple[BipartiteGraph, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Peel to the maximal subgraph where left degrees are >= d_left and
    right degrees are >= d_right.

    Returns the core plus, per side, the original id of each surviving
    vertex. Peeling removes the lowest-degree vertex first (left before
    right on ties) so the remap is deterministic.
    """
    deg = [
        [len(n) for n in g.adj_left],
        [len(n) for n in g.adj_right],
    ]
    need = (d_left, d_right)
    removed = [[False] * g.n_left, [False] * g.n_right]
    heap: list[tuple[int, int, int]] = []
    for s in (0, 1):
        n = g.n_left if s == 0 else g.n_right
        for v in range(n):
            if deg[s][v] < need[s]:
                heap.append((deg[s][v], s, v))
    heapq.heapify(heap)
    adj = (g.adj_left, g.adj_right)
    while heap:
        dv, s, v = heapq.heappop(heap)
        if removed[s][v] or dv != deg[s][v]:
            continue
        if deg[s][v] >= need[s]:
            continue
        removed[s][v] = True
        t = 1 - s
        for w in adj[s][v]:
            if not removed[t][w]:
                deg[t][w] -= 1
                if deg[t][w] < need[t]:
                    heapq.heappush(heap, (deg[t][w], t, w))
    keep_left = tuple(v for v in range(g.n_left) if not removed[0][v])
    keep_right = tuple(u for u in range(g.n_right) if not removed[1][u])
    new_left = {v: i for i, v in enumerate(keep_left)}
    new_right = {u: i for i, u in enumerate(keep_right)}
    edges = [
        (new_left[v], new_right[u])
        for v, u in g.edges()
        if v in new_left and u in new_right
    ]
    labels_left = (
        tuple(g.labels_left[v] for v in keep_left) if g.labels_left is not None else None
    )
    labels_right = (
        tuple(g.labels_right[u] for u in keep_right) if g.labels_right is not None else None
    )
    core = BipartiteGraph(
        len(keep_left), len(keep_right), edges, labels_left, labels_right
    )
    return core, (keep_left, keep_right)


def theta_core(
    g: BipartiteGraph, d: int
) -> tuple[BipartiteGraph, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Maximal induced subgraph in which every vertex has degree >= d."""
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    return core_decompose(g, d, d)


# -- synthetic generator ----------------------------------------------------


def gen_er(n_left: int, n_right: int, density: float, seed: int) -> BipartiteGraph:
    """Uniform random bipartite graph with m = round(density * (n_left + n_right))
    distinct edges, deterministic for a fixed seed."""
    if n_left < 0 or n_right < 0:
        raise ValueError("vertex counts must be non-negative")
    if density < 0:
        raise ValueError("density must be non-negative")
    m = round(density * (n_left + n_right))
    if m > n_left * n_right:
        raise ValueError(
            f"requested {m} edges but only {n_left * n_right} are possible"
        )
    rng = random.Random(seed)
    codes = rng.sample(range(n_left * n_right), m) if m else []
    codes.sort()
    edges = [divmod(c, n_right) for c in codes]
    return BipartiteGraph(n_left, n_right, edges)
