"""Tiered trees: data types, validation and exhaustive enumeration.

Vertices are labelled ``1..n``; tiers are numbered from the bottom, so tier 1
is the lowest.  Every edge is stored as ``(u, v)`` with ``u < v`` and a valid
tiered tree always has ``tier(u) < tier(v)`` on its edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapacityError, DomainError, InvalidTreeError

Edge = tuple[int, int]

DEFAULT_BRUTE_LIMIT = 7


@dataclass(frozen=True)
class TierType:
    """Composition ``(p_1, ..., p_m)``: ``p_k`` vertices sit on tier ``k``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if len(self.parts) < 2:
            raise DomainError(f"tier type needs at least two tiers, got {self.parts}")
        if any(p < 1 for p in self.parts):
            raise DomainError(f"tier type parts must be positive, got {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class TieredTree:
    n: int
    tiers: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "tiers", tuple(int(t) for t in self.tiers))
        normalized = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", normalized)

    def tier(self, v: int) -> int:
        return self.tiers[v - 1]

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def tier_type(self) -> tuple[int, ...]:
        """Counts per tier ``1..max tier`` (zeros kept for empty tiers)."""
        top = max(self.tiers, default=0)
        return tuple(self.tiers.count(k) for k in range(1, top + 1))

    def maxima(self) -> list[int]:
        """Vertices on the top tier (the maxima of a two-tier tree)."""
        top = max(self.tiers)
        return [v for v in range(1, self.n + 1) if self.tier(v) == top]

    def to_json(self) -> dict:
        return {"n": self.n, "tiers": list(self.tiers), "edges": [list(e) for e in self.edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: Mapping | str) -> TieredTree:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), tuple(obj["tiers"]), tuple(tuple(e) for e in obj["edges"]))


def maxmin_tree(n: int, maxima: Iterable[int], edges: Iterable[Edge]) -> TieredTree:
    """Two-tier tree with the given maxima on tier 2 and everything else on tier 1."""
    top = set(maxima)
    return TieredTree(n, tuple(2 if v in top else 1 for v in range(1, n + 1)), tuple(edges))


def validate_tiered_tree(tree: TieredTree) -> str | None:
    """Return ``None`` if ``tree`` is a valid tiered tree, else a message naming
    the first violated constraint and a witness."""
    n = tree.n
    if n < 1:
        return "vertex count must be at least 1"
    if len(tree.tiers) != n:
        return f"tiering has {len(tree.tiers)} entries for {n} vertices"
    if any(t < 1 for t in tree.tiers):
        return "tiers are numbered from 1"
    if len(set(tree.edges)) != len(tree.edges):
        return "repeated edge"
    for u, v in tree.edges:
        if not (1 <= u < v <= n):
            return f"edge {(u, v)} is not a pair of distinct labels in 1..{n}"
    if len(tree.edges) != n - 1:
        return f"a tree on {n} vertices has {n - 1} edges, got {len(tree.edges)}"
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in tree.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return f"edge {(u, v)} closes a cycle"
        parent[ru] = rv
    for u, v in tree.edges:
        tu, tv = tree.tier(u), tree.tier(v)
        if tu == tv:
            return f"edge {(u, v)} joins two vertices on tier {tu}"
        if tu > tv:
            return f"edge {(u, v)}: smaller label {u} sits above larger label {v}"
    return None


def check_tiered_tree(tree: TieredTree) -> TieredTree:
    problem = validate_tiered_tree(tree)
    if problem is not None:
        raise InvalidTreeError(problem)
    return tree


@dataclass(frozen=True)
class CompleteTieredGraph:
    """All edges ``(u, v)``, ``u < v``, allowed by a tiering; edges are kept in
    ascending lexicographic order, which is also the activity order."""

    n: int
    tiers: tuple[int, ...]
    edges: tuple[Edge, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "tiers", tuple(self.tiers))
        t = self.tiers
        edges = tuple(
            (u, v)
            for u in range(1, self.n + 1)
            for v in range(u + 1, self.n + 1)
            if t[u - 1] < t[v - 1]
        )
        object.__setattr__(self, "edges", edges)

    def is_connected(self) -> bool:
        return _connected(range(1, self.n + 1), self.edges)


def complete_tiered_graph(n: int, tier_of: Sequence[int] | Mapping[int, int]) -> CompleteTieredGraph:
    if isinstance(tier_of, Mapping):
        tiers = tuple(tier_of[v] for v in range(1, n + 1))
    else:
        tiers = tuple(tier_of)
    if len(tiers) != n:
        raise DomainError(f"tiering must cover all {n} vertices")
    return CompleteTieredGraph(n, tiers)


def _connected(vertices: Iterable[int], edges: Iterable[Edge]) -> bool:
    vs = list(vertices)
    if not vs:
        return True
    adj: dict[int, list[int]] = {v: [] for v in vs}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(vs)


def spanning_trees(vertices: Sequence, edges: Sequence[tuple]) -> Iterator[tuple[int, ...]]:
    """Yield every spanning tree as a sorted tuple of edge indices.

    Works on multigraphs (loops are never chosen).  Include-before-exclude
    backtracking over the edge list emits trees in lexicographic order of
    their index tuples.
    """
    vs = list(vertices)
    index = {v: i for i, v in enumerate(vs)}
    ends = [(index[a], index[b]) for a, b in edges]
    nv, ne = len(vs), len(ends)
    if nv == 0:
        return
    if nv == 1:
        yield ()
        return

    def connectable(comp: list[int], start: int) -> bool:
        # union the current components with every edge not yet decided
        parent = {c: c for c in comp}

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        groups = len(parent)
        for i in range(start, ne):
            ra, rb = find(comp[ends[i][0]]), find(comp[ends[i][1]])
            if ra != rb:
                parent[ra] = rb
                groups -= 1
                if groups == 1:
                    return True
        return groups == 1

    if not connectable(list(range(nv)), 0):
        return
    chosen: list[int] = []

    def rec(i: int, comp: list[int]) -> Iterator[tuple[int, ...]]:
        if len(chosen) == nv - 1:
            yield tuple(chosen)
            return
        if ne - i < nv - 1 - len(chosen):
            return
        ca, cb = comp[ends[i][0]], comp[ends[i][1]]
        if ca != cb:
            chosen.append(i)
            yield from rec(i + 1, [ca if c == cb else c for c in comp])
            chosen.pop()
        if connectable(comp, i + 1):
            yield from rec(i + 1, comp)

    yield from rec(0, list(range(nv)))


def enumerate_spanning_trees(g: CompleteTieredGraph) -> Iterator[TieredTree]:
    """Tiered trees with tiering ``g.tiers``, in lexicographic order of their
    sorted edge lists; nothing is emitted when ``g`` is disconnected."""
    for idx in spanning_trees(range(1, g.n + 1), g.edges):
        yield TieredTree(g.n, g.tiers, tuple(g.edges[i] for i in idx))


def tier_assignments(parts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All tierings of ``1..n`` with ``parts[k-1]`` vertices on tier ``k``.

    Tier 1 takes its labels first (as a lexicographic combination of the
    remaining labels), then tier 2, and so on.
    """
    n = sum(parts)
    tiers = [0] * n

    def rec(k: int, remaining: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if k == len(parts):
            yield tuple(tiers)
            return
        for chosen in combinations(remaining, parts[k]):
            for v in chosen:
                tiers[v - 1] = k + 1
            rest = tuple(v for v in remaining if v not in chosen)
            yield from rec(k + 1, rest)

    yield from rec(0, tuple(range(1, n + 1)))


def enumerate_tiered_trees(p: TierType | Sequence[int]) -> Iterator[TieredTree]:
    """Every tree of tier type ``p``: outer loop over tierings, inner loop over
    spanning trees of the complete tiered graph."""
    parts = p.parts if isinstance(p, TierType) else TierType(tuple(p)).parts
    n = sum(parts)
    for tiers in tier_assignments(parts):
        yield from enumerate_spanning_trees(CompleteTieredGraph(n, tiers))


def compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``n`` into ``m`` positive parts, lexicographic."""
    if m == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - m + 2):
        for rest in compositions(n - first, m - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# brute-force oracle via Pruefer sequences

def prufer_decode(seq: Sequence[int], n: int) -> tuple[Edge, ...]:
    """Labelled tree on ``1..n`` encoded by a Pruefer sequence of length ``n-2``."""
    if n == 1:
        return ()
    if n == 2:
        return ((1, 2),)
    degree = [1] * (n + 1)
    for a in seq:
        degree[a] += 1
    edges = []
    for a in seq:
        leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
        edges.append((min(leaf, a), max(leaf, a)))
        degree[leaf] -= 1
        degree[a] -= 1
    u, v = (w for w in range(1, n + 1) if degree[w] == 1)
    edges.append((u, v))
    return tuple(sorted(edges))


def labeled_trees(n: int) -> Iterator[tuple[Edge, ...]]:
    """All ``n^(n-2)`` labelled trees on ``1..n``."""
    if n < 1:
        raise DomainError("labeled_trees needs n >= 1")
    if n <= 2:
        yield prufer_decode((), n)
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(seq, n)


def _tierings(n: int, m: int, edges: Sequence[Edge]) -> Iterator[tuple[int, ...]]:
    lower: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        lower[v].append(u)
    t = [0] * (n + 1)

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v > n:
            yield tuple(t[1:])
            return
        floor = max((t[u] for u in lower[v]), default=0)
        for k in range(floor + 1, m + 1):
            t[v] = k
            yield from rec(v + 1)

    yield from rec(1)


def count_brute(n: int, m: int, mode: str = "all", limit: int = DEFAULT_BRUTE_LIMIT) -> int:
    """Count (tree, tiering) pairs on ``n`` vertices with tiers in ``1..m``.

    ``mode="all"`` counts tierings whose image has at least two tiers,
    ``mode="proper"`` only surjective ones.  Every labelled tree comes from a
    Pruefer sequence; the tierings of each tree are enumerated by
    backtracking over the labels.
    """
    if mode not in ("all", "proper"):
        raise DomainError(f"mode must be 'all' or 'proper', got {mode!r}")
    if n < 1 or m < 1:
        raise DomainError("count_brute needs n >= 1 and m >= 1")
    if n > limit:
        raise CapacityError(f"count_brute: n={n} exceeds the capacity limit {limit}")
    if m == 1:
        return 0
    total = 0
    for edges in labeled_trees(n):
        for t in _tierings(n, m, edges):
            image = len(set(t))
            if image < 2:
                continue
            if mode == "proper" and image != m:
                continue
            total += 1
    return total


def count_labeled_trees(n: int) -> int:
    return sum(1 for _ in labeled_trees(n))
