"""Counting tiered trees: closed form, inclusion-exclusion, rooted counts and
the exponential generating function identity."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import RatSeries, multinomial
from .errors import CapacityError, DomainError, VerificationError
from .trees import DEFAULT_BRUTE_LIMIT, labeled_trees, _tierings


def _weak_compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _weak_compositions(n - first, m - 1):
            yield (first,) + rest


def count_closed_form(n: int, m: int) -> int:
    """Number of trees on ``n`` vertices tiered into ``1..m`` (image of size
    at least two), by the multinomial sum over weak compositions of ``n``."""
    if n < 2 or m < 1:
        raise DomainError("count_closed_form needs n >= 2 and m >= 1")
    total = 0
    for ks in _weak_compositions(n, m):
        s = sum((m - 1 - i) * k for i, k in enumerate(ks))
        total += multinomial(n, ks) * s ** (n - 1)
    denom = n * m ** (n - 1)
    q, r = divmod(total, denom)
    if r:
        raise VerificationError(f"closed form for ({n}, {m}) is not an integer: {total}/{denom}")
    return q


def count_proper(n: int, m: int) -> int:
    """Surjectively tiered trees, by inclusion-exclusion over the tiers left empty:
    ``sum_{k=0}^{m-2} (-1)^k C(m, m-k) T_{n, m-k}``."""
    if n < 2 or m < 2:
        raise DomainError("count_proper needs n >= 2 and m >= 2")
    return sum((-1) ** k * math.comb(m, m - k) * count_closed_form(n, m - k) for k in range(m - 1))


def rooted_count(i: int, n: int, m: int, limit: int = DEFAULT_BRUTE_LIMIT) -> int:
    """Brute-force count of (tree, tiering, root) with the root on tier ``i``."""
    if not 1 <= i <= m:
        raise DomainError(f"tier {i} outside 1..{m}")
    if n < 2:
        raise DomainError("rooted_count needs n >= 2")
    if n > limit:
        raise CapacityError(f"rooted_count: n={n} exceeds the capacity limit {limit}")
    total = 0
    for edges in labeled_trees(n):
        for t in _tierings(n, m, edges):
            total += t.count(i)
    return total


def tm_series(m: int, order: int) -> RatSeries:
    """``sum_{n>=1} T_{n+1,m} x^n / n!``."""
    return RatSeries.from_egf({n: count_closed_form(n + 1, m) for n in range(1, order + 1)}, order)


def rooted_series(m: int, order: int) -> RatSeries:
    """``x + sum_{n>=2} (n/m) T_{n,m} x^n / n!`` (one rooted tree on a single vertex)."""
    coeffs = [Fraction(0)] * (order + 1)
    if order >= 1:
        coeffs[1] = Fraction(1)
    for n in range(2, order + 1):
        coeffs[n] = Fraction(n * count_closed_form(n, m), m) / math.factorial(n)
    return RatSeries(coeffs, order)


def egf_residual(m: int, order: int, form: str = "corrected") -> RatSeries:
    """Left minus right side of the functional equation for ``T_m``.

    ``form="corrected"``: ``T_m = sum_{k=1}^{m-1} exp(k M) - (m - 1)``.
    ``form="printed"``: ``T_m = sum_{k=1}^{m} exp((m-k) x (1 + T_m) / m)``,
    kept for comparison; it is off already in the constant term.
    """
    if m < 2:
        raise DomainError("the functional equation needs m >= 2")
    T = tm_series(m, order)
    if form == "corrected":
        M = rooted_series(m, order)
        rhs = RatSeries([0], order)
        for k in range(1, m):
            rhs = rhs + (M * k).exp()
        rhs = rhs - (m - 1)
    elif form == "printed":
        D = RatSeries.variable(order) * (T + 1)
        rhs = RatSeries([0], order)
        for k in range(1, m + 1):
            rhs = rhs + (D * Fraction(m - k, m)).exp()
    else:
        raise DomainError(f"unknown form {form!r}")
    return T - rhs


def egf_check(m: int, order: int) -> RatSeries:
    """Residual of the corrected relation; raises if it is not identically zero."""
    res = egf_residual(m, order)
    for n, c in enumerate(res.coeffs):
        if c:
            raise VerificationError(f"T_{m} functional equation fails at x^{n}: residual {c}")
    return res


@dataclass(frozen=True)
class CountTable:
    entries: dict[tuple[int, int], tuple[int, int]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "m", "T", "P"])
        for (n, m), (t, p) in sorted(self.entries.items()):
            w.writerow([n, m, t, p])
        return buf.getvalue()

    def to_json(self) -> list[dict]:
        return [{"n": n, "m": m, "T": str(t), "P": str(p)} for (n, m), (t, p) in sorted(self.entries.items())]


def count_table(max_n: int, min_n: int = 3) -> CountTable:
    """``T_{n,m}`` and ``P_{n,m}`` for ``min_n <= n <= max_n`` and ``1 <= m <= n``."""
    entries = {}
    for n in range(min_n, max_n + 1):
        for m in range(1, n + 1):
            t = count_closed_form(n, m)
            p = count_proper(n, m) if m >= 2 else 0
            entries[(n, m)] = (t, p)
    return CountTable(entries)
