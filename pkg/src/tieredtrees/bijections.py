"""Bijections between permutations, weight-zero tiered trees and complete
nonambiguous trees.

Permutations are 1-based words.  A word that ends with its largest letter
is called *completed*; the tree constructions below work on completed
words given in their actual labels, so no relabelling is ever needed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import RatSeries
from .errors import CapacityError, DomainError, VerificationError
from .trees import TieredTree, check_tiered_tree, maxmin_tree
from .weight import tree_weight

CNAT_LIMIT = 5


@dataclass(frozen=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(a) for a in self.word)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise DomainError(f"{w} is not a permutation of 1..{len(w)}")
        object.__setattr__(self, "word", w)

    @property
    def n(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """Words of ``S_n`` in lexicographic order."""
    return permutations(range(1, n + 1))


def flatten(seq: Sequence[int]) -> tuple[int, ...]:
    """Replace the i-th smallest entry by i, keeping positions."""
    rank = {a: i for i, a in enumerate(sorted(seq), start=1)}
    return tuple(rank[a] for a in seq)


def split_at_maxima(seq: Sequence[int]) -> list[tuple[int, ...]]:
    """Cut after the maximum of what is left, repeatedly."""
    blocks = []
    rest = list(seq)
    while rest:
        cut = rest.index(max(rest)) + 1
        blocks.append(tuple(rest[:cut]))
        rest = rest[cut:]
    return blocks


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple[tuple[int, ...], ...]
    right: tuple[int, ...]

    def block_count(self) -> int:
        """Blocks left of the minimum, plus the right part if it holds more
        than the appended maximum."""
        return len(self.blocks) + (1 if len(self.right) > 1 else 0)


def decompose_completed(seq: Sequence[int]) -> Decomposition:
    """Split a completed word around its minimum; the left part is cut at
    successive maxima."""
    i = seq.index(min(seq))
    return Decomposition(tuple(split_at_maxima(seq[:i])), tuple(seq[i + 1:]))


def decompose(pi: Permutation | Sequence[int]) -> Decomposition:
    """Append ``n + 1`` and split (no flattening)."""
    w = tuple(pi)
    return decompose_completed(w + (len(w) + 1,))


# ---------------------------------------------------------------------------
# permutations <-> weight-zero maxmin trees

def _build(seq: tuple[int, ...]) -> tuple[list[tuple[int, int]], list[int]]:
    if len(seq) == 1:
        return [], [seq[0]]
    v = min(seq)
    dec = decompose_completed(seq)
    edges: list[tuple[int, int]] = []
    maxima: list[int] = []
    for part in dec.blocks + (dec.right,):
        e, mx = _build(part)
        edges += e
        maxima += mx
        edges.append((v, min(mx)))
    return edges, maxima


def perm_to_tree(pi: Permutation | Sequence[int]) -> TieredTree:
    """Weight-0 maxmin tree on ``n + 1`` vertices with ``des(pi) + 1`` maxima."""
    w = tuple(Permutation(tuple(pi)).word)
    n = len(w)
    edges, maxima = _build(w + (n + 1,))
    return maxmin_tree(n + 1, maxima, edges)


def _components(vertices: Iterable[int], adj: Mapping[int, Sequence[int]]) -> list[list[int]]:
    left = set(vertices)
    out = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b in left and b not in comp:
                    comp.add(b)
                    stack.append(b)
        left -= comp
        out.append(sorted(comp))
    return out


def skeleton_word(tree: TieredTree) -> tuple[int, ...]:
    """Completed word underlying any maxmin tree, ignoring where each minimum
    attaches; for weight-0 trees this inverts :func:`perm_to_tree`."""
    adj = tree.adjacency()

    def rec(vs: list[int]) -> list[int]:
        if len(vs) == 1:
            return list(vs)
        v = vs[0]
        rest = [u for u in vs if u != v]
        sub = {u: [b for b in adj[u] if b != v] for u in rest}
        comps = _components(rest, sub)
        top = max(vs)
        right = next(c for c in comps if top in c)
        others = sorted((c for c in comps if c is not right), key=max, reverse=True)
        word: list[int] = []
        for c in others:
            word += rec(c)
        return word + [v] + rec(right)

    return tuple(rec(list(range(1, tree.n + 1))))


def _check_maxmin(tree: TieredTree) -> None:
    check_tiered_tree(tree)
    if tree.n < 1 or any(t not in (1, 2) for t in tree.tiers):
        raise DomainError("expected a maxmin tree (tiers 1 and 2 only)")


def tree_to_perm(tree: TieredTree) -> Permutation:
    """Inverse of :func:`perm_to_tree`; rejects trees of positive weight."""
    _check_maxmin(tree)
    if tree.n >= 2 and tree_weight(tree) != 0:
        raise DomainError("tree_to_perm needs a weight-0 maxmin tree")
    return Permutation(skeleton_word(tree)[:-1])


# ---------------------------------------------------------------------------
# cycle insertion

def cycles_of(pi: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles of a 1-based permutation, each starting at its minimum."""
    seen = set()
    out = []
    for start in range(1, len(pi) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        a = pi[start - 1]
        while a != start:
            cyc.append(a)
            seen.add(a)
            a = pi[a - 1]
        out.append(tuple(cyc))
    return out


def cycle_insertion(cycles: Sequence[Sequence[int]], after: int | None) -> Permutation:
    """Insert a new smallest letter into a permutation of ``1..n-1`` given by
    its cycles, and read off a word of ``S_n``.

    The new letter goes right after ``after`` inside that letter's cycle, or
    forms its own cycle when ``after`` is ``None``.  Its cycle is rotated to
    start with it and placed last; every other cycle is rotated to end with
    its maximum and they are ordered by decreasing maxima.  The resulting
    word (new letter = 1, old letters shifted up by one) decomposes into
    exactly as many blocks as there were cycles.
    """
    cycles = [tuple(int(a) for a in c) for c in cycles]
    letters = sorted(a for c in cycles for a in c)
    size = len(letters)
    if letters != list(range(1, size + 1)) or any(len(c) == 0 for c in cycles):
        raise DomainError("cycles must partition 1..n-1")
    if after is not None and not 1 <= after <= size:
        raise DomainError(f"insertion slot {after} is not a letter of 1..{size}")
    new = 0
    head: tuple[int, ...] = (new,)
    rest = []
    for c in cycles:
        if after is not None and after in c:
            j = c.index(after)
            opened = c[j + 1:] + c[: j + 1]
            head = (new,) + opened
        else:
            top = c.index(max(c))
            rest.append(c[top + 1:] + c[: top + 1])
    rest.sort(key=max, reverse=True)
    word = [a for c in rest for a in c] + list(head)
    return Permutation(tuple(a + 1 for a in word))


# ---------------------------------------------------------------------------
# complete nonambiguous trees

Point = tuple[int, int]


@dataclass(frozen=True)
class CompleteNonambiguousTree:
    """Point set in the grid; ``(x, y)`` = (column, row), root ``(1, 1)`` in the
    upper-left corner, rows growing downwards."""

    points: frozenset[Point]

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset((int(x), int(y)) for x, y in self.points))

    @property
    def k(self) -> int:
        return (len(self.points) - 1) // 2

    def sorted_points(self) -> list[Point]:
        return sorted(self.points)

    def to_json(self) -> dict:
        return {"k": self.k, "points": [list(p) for p in self.sorted_points()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: Mapping | str) -> CompleteNonambiguousTree:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(frozenset(tuple(p) for p in obj["points"]))


def nonambiguous_parents(points: Iterable[Point]) -> dict[Point, Point] | str:
    """Parent of every non-root point, or a message if the set is not a
    nonambiguous tree.

    A non-root point must have points to its left in its row or above it in
    its column, but not both; its parent is the nearest one.
    """
    pts = set(points)
    if (1, 1) not in pts:
        return "root (1, 1) missing"
    xs = {x for x, _ in pts}
    ys = {y for _, y in pts}
    if xs != set(range(1, max(xs) + 1)) or ys != set(range(1, max(ys) + 1)):
        return "empty row or column between used ones"
    parent = {}
    for p in pts:
        if p == (1, 1):
            continue
        x, y = p
        left = [a for a, b in pts if b == y and a < x]
        above = [b for a, b in pts if a == x and b < y]
        if bool(left) == bool(above):
            return f"point {p} needs exactly one of: a point to its left, a point above"
        parent[p] = (max(left), y) if left else (x, max(above))
    return parent


def validate_cnat(points: Iterable[Point]) -> str | None:
    parent = nonambiguous_parents(points)
    if isinstance(parent, str):
        return parent
    kids: dict[Point, int] = {p: 0 for p in points}
    for q in parent.values():
        kids[q] += 1
    bad = [p for p, c in kids.items() if c not in (0, 2)]
    if bad:
        return f"point {min(bad)} has {kids[min(bad)]} children"
    return None


def enumerate_cnat(k: int, limit: int = CNAT_LIMIT) -> Iterator[CompleteNonambiguousTree]:
    """Complete nonambiguous trees with ``k`` internal points.

    Columns are filled left to right.  A column's top point continues a row
    whose last point still waits for its right child; further points of the
    column go in fresh rows below it.  Every point except the bottom of its
    column must later get a right child, and the bottom one never does.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k > limit:
        raise CapacityError(f"enumerate_cnat: k={k} exceeds the capacity limit {limit}")
    size = k + 1
    columns: list[tuple[int, ...]] = []

    def emit() -> CompleteNonambiguousTree:
        return CompleteNonambiguousTree(frozenset(
            (c, y) for c, rows in enumerate(columns, start=1) for y in rows))

    def rec(open_rows: frozenset[int], used: frozenset[int]) -> Iterator[CompleteNonambiguousTree]:
        if not open_rows:
            if len(columns) == size and len(used) == size:
                yield emit()
            return
        if len(columns) == size:
            return
        fresh = [y for y in range(1, size + 1) if y not in used]
        for top in sorted(open_rows):
            below = [y for y in fresh if y > top]
            for r in range(len(below) + 1):
                for extra in combinations(below, r):
                    rows = (top,) + extra
                    # every point but the bottom one waits for a right child
                    new_open = (open_rows - {top}) | set(rows[:-1])
                    columns.append(rows)
                    yield from rec(frozenset(new_open), used | set(extra))
                    columns.pop()

    if size == 1:
        yield CompleteNonambiguousTree(frozenset({(1, 1)}))
        return
    fresh = list(range(2, size + 1))
    for r in range(len(fresh) + 1):
        for extra in combinations(fresh, r):
            rows = (1,) + extra
            columns.append(rows)
            yield from rec(frozenset(rows[:-1]), frozenset(rows))
            columns.pop()


def _children(points: set[Point]) -> dict[Point, list[Point]]:
    parent = nonambiguous_parents(points)
    if isinstance(parent, str):
        raise DomainError(parent)
    kids: dict[Point, list[Point]] = {p: [] for p in points}
    for p, q in parent.items():
        kids[q].append(p)
    return kids


def cnat_to_tiered(tree: CompleteNonambiguousTree) -> TieredTree:
    """Fully tiered weight-0 tree on ``k + 1`` vertices.

    Column ``j``'s leaf in row ``Y`` puts vertex ``j`` on tier ``k + 2 - Y``.
    Edges come from the subtrees left after erasing column 1, with vertex 1
    joined to the smallest admissible vertex of each.
    """
    problem = validate_cnat(tree.points)
    if problem:
        raise DomainError(f"not a complete nonambiguous tree: {problem}")
    pts = set(tree.points)
    n = max(x for x, _ in pts)
    tiers, edges = _cnat_rec(pts)
    return TieredTree(n, tuple(tiers[j] for j in range(1, n + 1)), tuple(edges))


def _cnat_rec(pts: set[Point]) -> tuple[dict[int, int], list[tuple[int, int]]]:
    # labels are column indices of ``pts``; tiers ranked from the bottom row
    cols = sorted({x for x, _ in pts})
    rows = sorted({y for _, y in pts})
    leaf_row = {x: max(y for a, y in pts if a == x) for x in cols}
    rank_from_bottom = {y: len(rows) - i for i, y in enumerate(rows)}
    tiers = {x: rank_from_bottom[leaf_row[x]] for x in cols}
    if len(cols) == 1:
        return tiers, []
    kids = _children(_normalize(pts))
    # map back to original coordinates
    cmap = {i: c for i, c in enumerate(cols, start=1)}
    rmap = {i: r for i, r in enumerate(rows, start=1)}
    kids = {(cmap[a], rmap[b]): [(cmap[c], rmap[d]) for c, d in v] for (a, b), v in kids.items()}
    first = cols[0]
    edges: list[tuple[int, int]] = []
    for p in sorted(pts):
        if p[0] != first:
            continue
        for child in kids[p]:
            if child[0] == first:
                continue
            sub = set()
            stack = [child]
            while stack:
                a = stack.pop()
                sub.add(a)
                stack.extend(kids[a])
            sub_tiers, sub_edges = _cnat_rec(sub)
            edges += sub_edges
            lowest = tiers[first]
            target = min(v for v in sub_tiers if tiers[v] > lowest)
            edges.append((first, target))
    return tiers, edges


def _normalize(pts: set[Point]) -> set[Point]:
    cols = {c: i for i, c in enumerate(sorted({x for x, _ in pts}), start=1)}
    rows = {r: i for i, r in enumerate(sorted({y for _, y in pts}), start=1)}
    return {(cols[x], rows[y]) for x, y in pts}


def tiered_to_cnat(tree: TieredTree) -> CompleteNonambiguousTree:
    """Inverse of :func:`cnat_to_tiered` on fully tiered weight-0 trees."""
    check_tiered_tree(tree)
    n = tree.n
    if sorted(tree.tiers) != list(range(1, n + 1)):
        raise DomainError("expected a fully tiered tree (one vertex per tier)")
    if tree_weight(tree) != 0:
        raise DomainError("tiered_to_cnat needs a weight-0 tree")
    adj = tree.adjacency()

    def rec(vs: list[int]) -> set[Point]:
        # local grid: column i = i-th smallest label, row 1 = highest tier
        if len(vs) == 1:
            return {(1, 1)}
        local_col = {v: i for i, v in enumerate(vs, start=1)}
        by_tier = sorted(vs, key=tree.tier, reverse=True)
        local_row = {v: i for i, v in enumerate(by_tier, start=1)}
        low = vs[0]
        rest = vs[1:]
        sub = {u: [b for b in adj[u] if b != low] for u in rest}
        pts = {(1, 1), (1, local_row[low])}
        for comp in _components(rest, sub):
            inner = rec(comp)
            comp_by_tier = sorted(comp, key=tree.tier, reverse=True)
            for x, y in inner:
                pts.add((local_col[comp[x - 1]], local_row[comp_by_tier[y - 1]]))
            pts.add((1, local_row[comp_by_tier[0]]))
        return pts

    return CompleteNonambiguousTree(frozenset(rec(list(range(1, n + 1)))))


def bessel_series(order: int) -> RatSeries:
    """``-log sum_k (-1)^k x^k / (k!)^2``."""
    base = RatSeries([Fraction((-1) ** k, math.factorial(k) ** 2) for k in range(order + 1)], order)
    return -base.log()


def bessel_check(order: int, limit: int = CNAT_LIMIT + 1) -> list[Fraction]:
    """Coefficients of :func:`bessel_series` through ``x^order``, each checked
    against the tree count ``b_{k-1} / (k!)^2``."""
    if order > limit:
        raise CapacityError(f"bessel_check: order {order} exceeds the capacity limit {limit}")
    series = bessel_series(order)
    for k in range(1, order + 1):
        b = sum(1 for _ in enumerate_cnat(k - 1))
        expected = Fraction(b, math.factorial(k) ** 2)
        if series[k] != expected:
            raise VerificationError(f"x^{k}: series gives {series[k]}, tree count gives {expected}")
    return list(series.coeffs)
