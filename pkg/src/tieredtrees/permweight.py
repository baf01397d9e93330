"""Weights of permutations and the resulting q-Eulerian polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .algebra import BivarPoly, IntPoly, partitions_iter
from .bijections import Permutation, decompose_completed, flatten, skeleton_word
from .errors import CapacityError, DomainError
from .trees import TierType, tier_assignments, CompleteTieredGraph, enumerate_spanning_trees
from .weight import tree_weight

SWEEP_LIMIT = 9


def descents(pi: Sequence[int]) -> int:
    return sum(1 for a, b in zip(pi, pi[1:]) if a > b)


def inversions(pi: Sequence[int]) -> int:
    w = list(pi)
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


@lru_cache(maxsize=None)
def _weight(w: tuple[int, ...]) -> int:
    n = len(w)
    if n <= 1:
        return 0
    if all(a < b for a, b in zip(w, w[1:])) or all(a > b for a, b in zip(w, w[1:])):
        return 0
    dec = decompose_completed(w + (n + 1,))
    total = 0
    for part in dec.blocks + (dec.right,):
        total += _weight(flatten(part)) + descents(part)
    return total


def perm_weight(pi: Permutation | Sequence[int]) -> int:
    """Largest weight of a maxmin tree buildable from ``pi``.

    Identity and reversal weigh 0; otherwise append ``n + 1``, decompose, and
    add the weight plus the descent count of every piece.
    """
    return _weight(flatten(tuple(pi)))


def _check_capacity(n: int, limit: int) -> None:
    if n > limit:
        raise CapacityError(f"n={n} exceeds the sweep capacity limit {limit}")


def q_eulerian(n: int, limit: int = SWEEP_LIMIT) -> BivarPoly:
    """``sum over S_n of x^des q^weight``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _check_capacity(n, limit)
    counts: dict[tuple[int, int], int] = {}
    for w in permutations(range(1, n + 1)):
        key = (descents(w), _weight(w))
        counts[key] = counts.get(key, 0) + 1
    return BivarPoly(counts)


_ONE = BivarPoly({(0, 0): 1})
_X = BivarPoly({(1, 0): 1})


def _shift_x(p: BivarPoly) -> BivarPoly:
    # x -> x q: a piece adds its own descents to the weight
    return BivarPoly({(a, b + a): c for a, b, c in p.terms()})


@lru_cache(maxsize=None)
def _ending_run(r: int, k: int) -> BivarPoly:
    """``x^des q^weight`` over permutations of ``1..r`` ending with
    ``r-k+1, .., r`` in order."""
    if r == k:
        return _ONE
    total = BivarPoly()
    for j in range(k, r):
        total = total + _piece(j + 1, k + 1) * _blocks(r - 1 - j) * math.comb(r - 1 - k, j - k)
    return total


@lru_cache(maxsize=None)
def _piece(s: int, k: int) -> BivarPoly:
    return _shift_x(_ending_run(s, k))


@lru_cache(maxsize=None)
def _blocks(m: int) -> BivarPoly:
    # m labelled letters cut into blocks; each block costs one descent
    if m == 0:
        return _ONE
    total = BivarPoly()
    for b in range(1, m + 1):
        total = total + _X * _piece(b, 1) * _blocks(m - b) * math.comb(m - 1, b - 1)
    return total


def q_eulerian_recursive(n: int) -> BivarPoly:
    """``E_n`` without enumerating ``S_n``.

    The weight and the descent count both split over the pieces of the
    decomposition, so the sum over ``S_n`` factors into sums over smaller
    pieces.  A piece that ends in a run of its largest letters keeps that
    run when it is decomposed again, which is what the second index tracks.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n == 0:
        return _ONE
    total = BivarPoly()
    for j in range(n):
        total = total + _piece(j + 1, 1) * _blocks(n - 1 - j) * math.comb(n - 1, j)
    return total


def stanley_q_eulerian(n: int, limit: int = SWEEP_LIMIT) -> BivarPoly:
    """``sum over S_n of x^des q^inv``."""
    _check_capacity(n, limit)
    counts: dict[tuple[int, int], int] = {}
    for w in permutations(range(1, n + 1)):
        key = (descents(w), inversions(w))
        counts[key] = counts.get(key, 0) + 1
    return BivarPoly(counts)


def perm_weight_oracle(n: int) -> dict[tuple[int, ...], int]:
    """Weights of all of ``S_n`` from the trees themselves: every maxmin tree
    on ``n + 1`` vertices is grouped under its underlying permutation and
    the largest tree weight in each group is kept."""
    best: dict[tuple[int, ...], int] = {}
    for k in range(1, n + 1):
        parts = (n + 1 - k, k)
        for tiers in tier_assignments(parts):
            for tree in enumerate_spanning_trees(CompleteTieredGraph(n + 1, tiers)):
                w = skeleton_word(tree)[:-1]
                wt = tree_weight(tree, validate=False)
                if wt > best.get(w, -1):
                    best[w] = wt
    return best


# ---------------------------------------------------------------------------
# set partitions

@dataclass(frozen=True)
class SetPartition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        letters = sorted(a for b in canon for a in b)
        if any(not b for b in canon) or letters != list(range(1, len(letters) + 1)):
            raise DomainError("blocks must be nonempty and partition 1..n")
        object.__setattr__(self, "blocks", canon)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def set_partitions(n: int) -> Iterator[SetPartition]:
    """All partitions of ``1..n`` (restricted growth order)."""
    def rec(i: int, blocks: list[list[int]]) -> Iterator[SetPartition]:
        if i > n:
            yield SetPartition(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    if n == 0:
        return
    yield from rec(1, [])


def partition_to_perm(partition: SetPartition | Iterable[Iterable[int]]) -> Permutation:
    """Sorted blocks, the block holding 1 last, the others by decreasing maxima."""
    if not isinstance(partition, SetPartition):
        partition = SetPartition(tuple(tuple(b) for b in partition))
    first = next(b for b in partition.blocks if 1 in b)
    others = sorted((b for b in partition.blocks if b is not first), key=max, reverse=True)
    return Permutation(tuple(a for b in others for a in b) + first)


def perm_to_partition(pi: Permutation | Sequence[int]) -> SetPartition:
    """Cut a weight-0 permutation at its descents."""
    w = tuple(pi)
    if perm_weight(w) != 0:
        raise DomainError(f"{w} has positive weight; only weight-0 permutations come from partitions")
    blocks: list[list[int]] = [[]]
    for i, a in enumerate(w):
        if i and w[i - 1] > a:
            blocks.append([])
        blocks[-1].append(a)
    return SetPartition(tuple(tuple(b) for b in blocks))


def promotion(pi: Permutation | Sequence[int]) -> Permutation:
    """``a_1 .. a_n`` with one descent becomes ``1, a_1 + 1, .., a_n + 1``."""
    w = tuple(pi)
    if descents(w) != 1:
        raise DomainError("promotion is defined for permutations with exactly one descent")
    return Permutation((1,) + tuple(a + 1 for a in w))


# ---------------------------------------------------------------------------
# coefficient identities and extremal weights

def x1_coefficient_formula(n: int) -> IntPoly:
    """``q^(n-2) + 3 q^(n-3) + 7 q^(n-4) + ... + (2^(n-1) - 1)``."""
    return IntPoly({n - 2 - j: 2 ** (j + 1) - 1 for j in range(n - 1)})


def xn2_coefficient_formula(n: int) -> IntPoly:
    """``q^(n-2) + C(n,1) q^(n-3) + ... + C(n, n-2)``."""
    return IntPoly({n - 2 - j: math.comb(n, j) for j in range(n - 1)})


@dataclass
class CheckReport:
    name: str
    ok: bool
    details: list[str]


def coefficient_checks(n: int, poly: BivarPoly | None = None) -> CheckReport:
    """Compare the x^1, x^(n-2), x^0 and x^(n-1) coefficients of ``E_n``
    with their closed forms."""
    if n < 2:
        raise DomainError("coefficient checks need n >= 2")
    E = poly if poly is not None else q_eulerian(n)
    details = []
    ok = True
    for label, got, want in (
        ("x^1", E.x_coefficient(1), x1_coefficient_formula(n)),
        (f"x^{n - 2}", E.x_coefficient(n - 2), xn2_coefficient_formula(n)),
        ("x^0", E.x_coefficient(0), IntPoly([1])),
        (f"x^{n - 1}", E.x_coefficient(n - 1), IntPoly([1])),
    ):
        good = got == want
        ok &= good
        details.append(f"n={n} {label}: {got} {'==' if good else '!='} {want}")
    return CheckReport(f"coefficients n={n}", ok, details)


def max_weight_permutation(n: int, d: int) -> tuple[int, ...]:
    """``1 2 .. (n-d-1) n (n-1) .. (n-d)``."""
    if not 0 <= d <= n - 1:
        raise DomainError(f"a permutation of {n} letters has 0..{n - 1} descents")
    return tuple(range(1, n - d)) + tuple(range(n, n - d - 1, -1))


def max_weight_check(n: int, limit: int = 8) -> CheckReport:
    """Exhaustive check over ``S_n``: for each descent count ``d`` the largest
    weight is ``d (n - 1 - d)`` and only :func:`max_weight_permutation`
    reaches it; dropping a final ascent never changes the weight."""
    _check_capacity(n, limit)
    best: dict[int, tuple[int, list[tuple[int, ...]]]] = {}
    lemma_failures = []
    for w in permutations(range(1, n + 1)):
        d, wt = descents(w), _weight(w)
        top, who = best.get(d, (-1, []))
        if wt > top:
            best[d] = (wt, [w])
        elif wt == top:
            who.append(w)
        if n >= 2 and w[-2] < w[-1] and perm_weight(w[:-1]) != wt:
            lemma_failures.append(w)
    ok = not lemma_failures
    details = []
    for d in sorted(best):
        wt, who = best[d]
        good = wt == d * (n - 1 - d) and who == [max_weight_permutation(n, d)]
        ok &= good
        details.append(f"n={n} d={d}: max weight {wt} attained by {len(who)} permutation(s)"
                       + ("" if good else f" [expected {d * (n - 1 - d)} by {max_weight_permutation(n, d)}]"))
    details.append(f"n={n}: final-ascent removal changed the weight {len(lemma_failures)} time(s)")
    return CheckReport(f"max weight n={n}", ok, details)


@dataclass(frozen=True)
class StabilizationReport:
    """Top-down coefficients of ``x^d`` in ``E_n`` for the two largest ``n``
    computed; ``prefix`` is their longest common initial segment.  This is
    an observation at finite ``n``, not a proof of stabilization."""

    d: int
    n_values: tuple[int, int]
    coefficients: tuple[tuple[int, ...], tuple[int, ...]]
    stable_upto: int

    @property
    def prefix(self) -> tuple[int, ...]:
        return self.coefficients[1][: self.stable_upto]


def top_down(p: IntPoly) -> tuple[int, ...]:
    return tuple(reversed(p.coefficients()))


def wd_prefix(d: int, n_max: int, polys: dict[int, BivarPoly] | None = None,
              limit: int = SWEEP_LIMIT, method: str = "sweep") -> StabilizationReport:
    """``method="sweep"`` enumerates ``S_n`` (capped by ``limit``);
    ``method="recursive"`` uses :func:`q_eulerian_recursive`."""
    if d < 1:
        raise DomainError("d must be at least 1")
    if method not in ("sweep", "recursive"):
        raise DomainError(f"unknown method {method!r}")
    polys = polys if polys is not None else {}
    if method == "sweep" and any(n not in polys for n in (n_max - 1, n_max)):
        _check_capacity(n_max, limit)
    rows = []
    for n in (n_max - 1, n_max):
        if n in polys:
            E = polys[n]
        elif method == "recursive":
            E = q_eulerian_recursive(n)
        else:
            E = q_eulerian(n, limit)
        rows.append(top_down(E.x_coefficient(d)))
    a, b = rows
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    return StabilizationReport(d, (n_max - 1, n_max), (a, b), k)


def two_colored_triangle(n: int, k: int) -> int:
    """Partitions of ``n`` with exactly ``k`` parts marked by a second colour:
    ``sum over partitions of C(#parts, k)``."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got ({n}, {k})")
    if n == 0:
        return 1
    return sum(math.comb(len(lam), k) for lam in partitions_iter(n))


def triangle_row(k: int, length: int) -> tuple[int, ...]:
    """``T(k, k), T(k+1, k), ...`` -- one row of the triangle as printed."""
    return tuple(two_colored_triangle(k + j, k) for j in range(length))


def triangle_agreement(report: StabilizationReport | Sequence[int], d: int | None = None) -> int:
    """How many leading W_d coefficients agree with triangle row d.

    Takes a report (its stable prefix is used) or a bare coefficient row
    together with ``d``."""
    if isinstance(report, StabilizationReport):
        prefix, d = report.prefix, report.d
    else:
        prefix = tuple(report)
        if d is None:
            raise DomainError("a bare coefficient row needs d")
    report_d = d
    row = triangle_row(report_d, len(prefix))
    k = 0
    while k < len(prefix) and prefix[k] == row[k]:
        k += 1
    return k
