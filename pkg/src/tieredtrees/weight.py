"""Weights of tiered trees, edge activities and Tutte polynomials."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import BivarPoly, IntPoly
from .errors import DomainError
from .trees import (
    CompleteTieredGraph,
    TieredTree,
    TierType,
    check_tiered_tree,
    enumerate_spanning_trees,
    enumerate_tiered_trees,
    spanning_trees,
    tier_assignments,
)

Edge = tuple[int, int]


def tree_weight(tree: TieredTree, validate: bool = True) -> int:
    """Weight by repeatedly deleting the smallest label.

    When ``v`` is the smallest vertex of a component and ``u`` its neighbour in
    a component ``C`` of the remainder, ``C`` contributes the number of
    vertices of ``C`` above ``v``'s tier with labels below ``u``.
    """
    if validate:
        check_tiered_tree(tree)
    adj = tree.adjacency()
    tier = tree.tiers
    total = 0
    stack = [frozenset(range(1, tree.n + 1))]
    while stack:
        comp = stack.pop()
        if len(comp) == 1:
            continue
        v = min(comp)
        tv = tier[v - 1]
        rest = comp - {v}
        for u in adj[v]:
            if u not in rest:
                continue
            # the piece of comp - v hanging off u
            piece = {u}
            frontier = [u]
            while frontier:
                a = frontier.pop()
                for b in adj[a]:
                    if b != v and b in rest and b not in piece:
                        piece.add(b)
                        frontier.append(b)
            total += sum(1 for w in piece if w < u and tier[w - 1] > tv)
            stack.append(frozenset(piece))
    return total


@dataclass(frozen=True)
class ActivityReport:
    internal: int
    external: int
    internal_edges: tuple[Edge, ...]
    external_edges: tuple[Edge, ...]


def _tree_path(adj: dict, a, b) -> list:
    """Vertices on the unique path from ``a`` to ``b`` in a forest adjacency."""
    prev = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y, _ in adj[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path


def edge_activities(vertices: Sequence, edges: Sequence[tuple], tree: Iterable[int]) -> tuple[list[int], list[int]]:
    """Internally and externally active edge indices of a spanning tree.

    ``edges`` is the ordered edge list (position = rank); ``tree`` holds
    indices into it.  Parallel edges are allowed, loops are always
    externally active.
    """
    in_tree = set(tree)
    adj: dict = {v: [] for v in vertices}
    for i in in_tree:
        a, b = edges[i]
        adj[a].append((b, i))
        adj[b].append((a, i))

    external = []
    for j, (a, b) in enumerate(edges):
        if j in in_tree:
            continue
        if a == b:
            external.append(j)
            continue
        path = _tree_path(adj, a, b)
        cycle = [j]
        for x, y in zip(path, path[1:]):
            cycle.append(next(i for z, i in adj[x] if z == y))
        if min(cycle) == j:
            external.append(j)

    internal = []
    for i in sorted(in_tree):
        a, b = edges[i]
        # side of the cut containing a, in tree minus edge i
        side = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for y, k in adj[x]:
                if k != i and y not in side:
                    side.add(y)
                    stack.append(y)
        cut = [k for k, (c, d) in enumerate(edges) if (c in side) != (d in side)]
        if min(cut) == i:
            internal.append(i)
    return internal, external


def external_activity(tree: TieredTree) -> ActivityReport:
    """Activities of ``tree`` inside its complete tiered graph, edges ordered
    lexicographically."""
    check_tiered_tree(tree)
    g = CompleteTieredGraph(tree.n, tree.tiers)
    pos = {e: i for i, e in enumerate(g.edges)}
    internal, external = edge_activities(range(1, tree.n + 1), g.edges, [pos[e] for e in tree.edges])
    return ActivityReport(
        internal=len(internal),
        external=len(external),
        internal_edges=tuple(g.edges[i] for i in internal),
        external_edges=tuple(g.edges[i] for i in external),
    )


# ---------------------------------------------------------------------------
# Tutte polynomial

def _is_connected(vertices: Sequence, edges: Sequence[tuple]) -> bool:
    vs = list(vertices)
    if not vs:
        return True
    adj: dict = {v: [] for v in vs}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)


def _tutte_activities(vertices: Sequence, edges: Sequence[tuple]) -> BivarPoly:
    counts: dict[tuple[int, int], int] = {}
    for tree in spanning_trees(vertices, edges):
        internal, external = edge_activities(vertices, edges, tree)
        key = (len(internal), len(external))
        counts[key] = counts.get(key, 0) + 1
    return BivarPoly(counts, ("x", "y"))


def _tutte_dc(vertices: tuple, edges: tuple) -> BivarPoly:
    # edges are (a, b) pairs on a multigraph; contraction merges b into a
    for i, (a, b) in enumerate(edges):
        if a == b:
            continue
        rest = edges[:i] + edges[i + 1:]
        contracted_vs = tuple(v for v in vertices if v != b)
        contracted = tuple((a if c == b else c, a if d == b else d) for c, d in rest)
        if not _is_connected(vertices, rest):
            return BivarPoly({(1, 0): 1}, ("x", "y")) * _tutte_dc(contracted_vs, contracted)
        return _tutte_dc(vertices, rest) + _tutte_dc(contracted_vs, contracted)
    # only loops remain
    return BivarPoly({(0, len(edges)): 1}, ("x", "y"))


def tutte_polynomial(vertices: Sequence, edges: Sequence[tuple], method: str = "activities") -> BivarPoly:
    """Tutte polynomial in ``(x, y)``.

    ``method="activities"`` sums ``x^internal y^external`` over spanning trees
    under the given edge order; ``method="deletion_contraction"`` uses the
    recursion on bridges and loops and does not look at the order.
    """
    vertices = tuple(vertices)
    edges = tuple(tuple(e) for e in edges)
    if not _is_connected(vertices, edges):
        raise DomainError("Tutte polynomial requested for a disconnected graph")
    if method == "activities":
        return _tutte_activities(vertices, edges)
    if method == "deletion_contraction":
        return _tutte_dc(vertices, edges)
    raise DomainError(f"unknown Tutte method {method!r}")


# ---------------------------------------------------------------------------
# generating polynomials

def _weights_for_tiering(args: tuple[int, tuple[int, ...]]) -> dict[int, int]:
    n, tiers = args
    counts: dict[int, int] = {}
    for tree in enumerate_spanning_trees(CompleteTieredGraph(n, tiers)):
        w = tree_weight(tree, validate=False)
        counts[w] = counts.get(w, 0) + 1
    return counts


def tier_poly(p: TierType | Sequence[int], workers: int = 1) -> IntPoly:
    """Sum of ``q^weight`` over all trees of tier type ``p``.

    With ``workers > 1`` the tierings are spread over a process pool; the
    result does not depend on the worker count.
    """
    parts = p.parts if isinstance(p, TierType) else TierType(tuple(p)).parts
    n = sum(parts)
    jobs = [(n, t) for t in tier_assignments(parts)]
    total: dict[int, int] = {}
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_weights_for_tiering, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_weights_for_tiering(j) for j in jobs]
    for counts in results:
        for w, c in counts.items():
            total[w] = total.get(w, 0) + c
    return IntPoly(total)


def tier_poly_via_tutte(p: TierType | Sequence[int]) -> IntPoly:
    """``sum_t T_{K_t}(1, q)`` over tierings ``t`` of type ``p``; a disconnected
    ``K_t`` contributes nothing."""
    parts = p.parts if isinstance(p, TierType) else TierType(tuple(p)).parts
    n = sum(parts)
    total = IntPoly()
    for tiers in tier_assignments(parts):
        g = CompleteTieredGraph(n, tiers)
        if not g.is_connected():
            continue
        total = total + tutte_polynomial(range(1, n + 1), g.edges).specialize_first(1)
    return total


def tier_poly_brute(p: TierType | Sequence[int]) -> IntPoly:
    """Same sum as :func:`tier_poly` but driven by :func:`enumerate_tiered_trees`."""
    counts: dict[int, int] = {}
    for tree in enumerate_tiered_trees(p):
        w = tree_weight(tree)
        counts[w] = counts.get(w, 0) + 1
    return IntPoly(counts)


def maxmin_polynomial(n: int, workers: int = 1) -> BivarPoly:
    """``sum x^(#maxima) q^weight`` over all maxmin trees on ``n`` vertices."""
    if n < 2:
        raise DomainError("maxmin trees need at least two vertices")
    parts = {k: tier_poly((n - k, k), workers=workers) for k in range(1, n)}
    return BivarPoly.from_x_coefficients(parts)
