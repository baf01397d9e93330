"""Exact arithmetic: sparse integer polynomials, truncated rational power
series and a handful of classical combinatorial number sequences.

Everything here is immutable and works on Python ints / ``Fraction``;
there is no floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError

__all__ = [
    "IntPoly",
    "BivarPoly",
    "RatSeries",
    "multinomial",
    "stirling1",
    "stirling2",
    "eulerian",
    "partition_count",
    "partitions_iter",
    "combinatorial_number",
]


def _clean(items: Iterable[tuple]) -> dict:
    out: dict = {}
    for key, c in items:
        if c:
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _monomial(coeff: int, var: str, e: int, first: bool) -> str:
    sign = "-" if coeff < 0 else "+"
    a = abs(coeff)
    if e == 0:
        body = str(a)
    else:
        power = var if e == 1 else f"{var}^{e}"
        body = power if a == 1 else f"{a}{power}"
    if first:
        return body if sign == "+" else "-" + body
    return f" {sign} {body}"


class IntPoly:
    """Polynomial in one variable (``q`` by convention) with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Sequence[int] | None = None):
        if coeffs is None:
            items: Iterable = ()
        elif isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        c = _clean((int(e), int(v)) for e, v in items)
        if any(e < 0 for e in c):
            raise DomainError("negative exponent in IntPoly")
        self._c = c

    @classmethod
    def monomial(cls, e: int, coeff: int = 1) -> IntPoly:
        return cls({e: coeff})

    # -- inspection -------------------------------------------------------
    @property
    def degree(self) -> float | int:
        """Largest exponent; ``-inf`` for the zero polynomial."""
        return max(self._c) if self._c else -math.inf

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def coefficients(self) -> list[int]:
        """Dense list, constant term first."""
        if not self._c:
            return []
        return [self._c.get(e, 0) for e in range(max(self._c) + 1)]

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __call__(self, value: int | Fraction) -> int | Fraction:
        return sum(c * value**e for e, c in self._c.items()) if self._c else 0

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly({0: other})
        if not isinstance(other, IntPoly):
            return NotImplemented
        return IntPoly(_clean(list(self._c.items()) + list(other._c.items())))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-other)

    def __rsub__(self, other: int) -> IntPoly:
        return (-self) + other

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly({e: c * other for e, c in self._c.items()})
        if not isinstance(other, IntPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly({0: other})
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __repr__(self) -> str:
        return f"IntPoly({self.coefficients()!r})"

    def format(self, var: str = "q") -> str:
        if not self._c:
            return "0"
        parts = [
            _monomial(c, var, e, i == 0)
            for i, (e, c) in enumerate(sorted(self._c.items(), reverse=True))
        ]
        return "".join(parts)

    __str__ = format

    def to_json(self) -> dict:
        return {"var_order": ["q"], "terms": [[e, str(c)] for e, c in self.terms()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> IntPoly:
        return cls({int(e): int(c) for e, c in obj["terms"]})


class BivarPoly:
    """Polynomial in two variables with integer coefficients.

    Keys are exponent pairs ``(i, j)`` for ``x^i y^j``; ``names`` only affects
    printing (``("x", "q")`` for tree/permutation statistics, ``("x", "y")``
    for Tutte polynomials).
    """

    __slots__ = ("_c", "names")

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None,
                 names: tuple[str, str] = ("x", "q")):
        c = _clean(((int(a), int(b)), int(v)) for (a, b), v in (coeffs or {}).items())
        if any(a < 0 or b < 0 for a, b in c):
            raise DomainError("negative exponent in BivarPoly")
        self._c = c
        self.names = names

    @classmethod
    def from_x_coefficients(cls, parts: Mapping[int, IntPoly],
                            names: tuple[str, str] = ("x", "q")) -> BivarPoly:
        """Assemble ``sum_d x^d * parts[d](q)``."""
        return cls({(d, e): c for d, p in parts.items() for e, c in p.terms()}, names)

    def x_coefficient(self, d: int) -> IntPoly:
        """Coefficient of ``x^d`` as a polynomial in the second variable."""
        return IntPoly({b: c for (a, b), c in self._c.items() if a == d})

    def y_coefficient(self, d: int) -> IntPoly:
        return IntPoly({a: c for (a, b), c in self._c.items() if b == d})

    def x_degree(self) -> int:
        return max((a for a, _ in self._c), default=-1)

    def terms(self) -> list[tuple[int, int, int]]:
        return [(a, b, c) for (a, b), c in sorted(self._c.items())]

    def coeff(self, a: int, b: int) -> int:
        return self._c.get((a, b), 0)

    def is_zero(self) -> bool:
        return not self._c

    def __call__(self, x: int | Fraction, y: int | Fraction) -> int | Fraction:
        return sum(c * x**a * y**b for (a, b), c in self._c.items()) if self._c else 0

    def specialize_second(self, y: int) -> IntPoly:
        """Substitute a value for the second variable; result is a poly in the first."""
        out: dict[int, int] = {}
        for (a, b), c in self._c.items():
            out[a] = out.get(a, 0) + c * y**b
        return IntPoly(out)

    def specialize_first(self, x: int) -> IntPoly:
        out: dict[int, int] = {}
        for (a, b), c in self._c.items():
            out[b] = out.get(b, 0) + c * x**a
        return IntPoly(out)

    def __add__(self, other: BivarPoly) -> BivarPoly:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return BivarPoly(_clean(list(self._c.items()) + list(other._c.items())), self.names)

    def __neg__(self) -> BivarPoly:
        return BivarPoly({k: -c for k, c in self._c.items()}, self.names)

    def __sub__(self, other: BivarPoly) -> BivarPoly:
        return self + (-other)

    def __mul__(self, other: BivarPoly | int) -> BivarPoly:
        if isinstance(other, int):
            return BivarPoly({k: c * other for k, c in self._c.items()}, self.names)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._c.items():
            for (a2, b2), c2 in other._c.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivarPoly(out, self.names)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __repr__(self) -> str:
        return f"BivarPoly({dict(sorted(self._c.items()))!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        xs, ys = self.names
        chunks = []
        for d in sorted({a for a, _ in self._c}):
            inner = self.x_coefficient(d)
            xpow = "" if d == 0 else (xs if d == 1 else f"{xs}^{d}")
            if not xpow:
                chunks.append(inner.format(ys))
            elif inner == 1:
                chunks.append(xpow)
            else:
                chunks.append(f"{xpow}({inner.format(ys)})")
        return " + ".join(chunks)

    def to_json(self) -> dict:
        return {"var_order": list(self.names),
                "terms": [[a, b, str(c)] for a, b, c in self.terms()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> BivarPoly:
        names = tuple(obj.get("var_order", ("x", "q")))
        return cls({(int(a), int(b)): int(c) for a, b, c in obj["terms"]}, names)  # type: ignore[arg-type]


class RatSeries:
    """Power series truncated after ``x^order``, exact rational coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[int | Fraction], order: int):
        if order < 0:
            raise DomainError("truncation order must be nonnegative")
        c = [Fraction(v) for v in list(coeffs)[: order + 1]]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.order = order
        self.coeffs = tuple(c)

    @classmethod
    def variable(cls, order: int) -> RatSeries:
        return cls([0, 1], order)

    @classmethod
    def from_egf(cls, counts: Mapping[int, int] | Sequence[int], order: int) -> RatSeries:
        """Series ``sum a_n x^n / n!`` from a count sequence indexed by ``n``."""
        items = counts.items() if isinstance(counts, Mapping) else enumerate(counts)
        c = [Fraction(0)] * (order + 1)
        for n, a in items:
            if n <= order:
                c[n] = Fraction(a, math.factorial(n))
        return cls(c, order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def _check(self, other: RatSeries) -> None:
        if self.order != other.order:
            raise DomainError("series truncation orders differ")

    def __add__(self, other: RatSeries | int | Fraction) -> RatSeries:
        if isinstance(other, (int, Fraction)):
            c = list(self.coeffs)
            c[0] += other
            return RatSeries(c, self.order)
        self._check(other)
        return RatSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self) -> RatSeries:
        return RatSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other: RatSeries | int | Fraction) -> RatSeries:
        return self + (-other)

    def __mul__(self, other: RatSeries | int | Fraction) -> RatSeries:
        if isinstance(other, (int, Fraction)):
            return RatSeries([a * other for a in self.coeffs], self.order)
        self._check(other)
        N = self.order
        a, b = self.coeffs, other.coeffs
        return RatSeries([sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(N + 1)], N)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"RatSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def exp(self) -> RatSeries:
        """``exp(s)`` via ``n g_n = sum_k k s_k g_{n-k}``; needs zero constant term."""
        if self.coeffs[0] != 0:
            raise DomainError("exp needs a series with zero constant term")
        s, N = self.coeffs, self.order
        g = [Fraction(1)] + [Fraction(0)] * N
        for n in range(1, N + 1):
            g[n] = Fraction(sum(k * s[k] * g[n - k] for k in range(1, n + 1))) / n
        return RatSeries(g, N)

    def log(self) -> RatSeries:
        """``log(s)`` for a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise DomainError("log needs a series with constant term 1")
        s, N = self.coeffs, self.order
        f = [Fraction(0)] * (N + 1)
        for n in range(1, N + 1):
            f[n] = s[n] - Fraction(sum(k * f[k] * s[n - k] for k in range(1, n))) / n
        return RatSeries(f, N)


def series_exp_log(s: RatSeries, which: str) -> RatSeries:
    if which == "exp":
        return s.exp()
    if which == "log":
        return s.log()
    raise DomainError(f"unknown series operation {which!r}")


__all__.append("series_exp_log")


# ---------------------------------------------------------------------------
# combinatorial numbers

def multinomial(n: int, parts: Sequence[int]) -> int:
    if any(k < 0 for k in parts) or sum(parts) != n:
        raise DomainError(f"multinomial({n}; {tuple(parts)}) parts must be >= 0 and sum to n")
    out = math.factorial(n)
    for k in parts:
        out //= math.factorial(k)
    return out


def _check_nk(n: int, k: int) -> None:
    if n < 0 or k < 0:
        raise DomainError(f"arguments must be nonnegative, got ({n}, {k})")


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind c(n, k)."""
    _check_nk(n, k)
    if n == 0:
        return int(k == 0)
    if k == 0 or k > n:
        return 0
    return stirling1(n - 1, k - 1) + (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    _check_nk(n, k)
    if n == 0:
        return int(k == 0)
    if k == 0 or k > n:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


@lru_cache(maxsize=None)
def eulerian(k: int, n: int) -> int:
    """A(k, n): permutations of n letters with exactly k descents."""
    _check_nk(n, k)
    if n == 0:
        return int(k == 0)
    if k >= n:
        return 0
    prev = eulerian(k - 1, n - 1) if k >= 1 else 0
    return (k + 1) * eulerian(k, n - 1) + (n - k) * prev


@lru_cache(maxsize=None)
def _parts_bounded(n: int, largest: int) -> int:
    if n == 0:
        return 1
    return sum(_parts_bounded(n - j, j) for j in range(1, min(n, largest) + 1))


def partition_count(n: int) -> int:
    if n < 0:
        raise DomainError("partition_count needs n >= 0")
    return _parts_bounded(n, n)


def partitions_iter(n: int) -> Iterator[list[int]]:
    """Partitions of ``n`` as weakly decreasing lists, reverse-lexicographic."""
    if n < 1:
        raise DomainError("partitions_iter needs n >= 1")
    part = [n]
    while True:
        yield list(part)
        # strip trailing ones, decrement the last part > 1, refill greedily
        ones = 0
        while part and part[-1] == 1:
            part.pop()
            ones += 1
        if not part:
            return
        part[-1] -= 1
        rest = ones + 1
        cap = part[-1]
        while rest:
            take = min(cap, rest)
            part.append(take)
            rest -= take


def combinatorial_number(kind: str, *args: int) -> int:
    """Dispatch by name; ``kind`` is one of multinomial, stirling1, stirling2,
    eulerian, partition_count."""
    if kind == "multinomial":
        n, *parts = args
        return multinomial(n, parts)
    table = {
        "stirling1": stirling1,
        "stirling2": stirling2,
        "eulerian": eulerian,
        "partition_count": partition_count,
    }
    if kind not in table:
        raise DomainError(f"unknown number kind {kind!r}")
    return table[kind](*args)
