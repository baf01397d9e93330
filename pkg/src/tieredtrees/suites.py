"""Verification suites behind ``tieredtrees verify``.

Each suite is a list of named checks.  A check returns ``(ok, detail)``; an
exception inside a check counts as a failure and its message becomes the
detail.  ``quick`` keeps every enumeration at ``n <= 5`` (``k <= 4`` for
CNATs), ``full`` runs each module at its stated capacity.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable

from . import reference as ref
from .algebra import (
    IntPoly,
    RatSeries,
    eulerian,
    partition_count,
    partitions_iter,
    stirling1,
    stirling2,
)
from .bijections import (
    cnat_to_tiered,
    cycle_insertion,
    cycles_of,
    decompose,
    enumerate_cnat,
    perm_to_tree,
    tiered_to_cnat,
    tree_to_perm,
    bessel_check,
)
from .counting import count_closed_form, count_proper, egf_check, egf_residual, rooted_count
from .errors import CapacityError
from .permweight import (
    coefficient_checks,
    descents,
    max_weight_check,
    partition_to_perm,
    perm_to_partition,
    perm_weight,
    perm_weight_oracle,
    q_eulerian,
    q_eulerian_recursive,
    set_partitions,
    stanley_q_eulerian,
    triangle_agreement,
    triangle_row,
    wd_prefix,
)
from .trees import (
    CompleteTieredGraph,
    count_brute,
    count_labeled_trees,
    enumerate_tiered_trees,
    tier_assignments,
)
from .weight import (
    external_activity,
    maxmin_polynomial,
    tier_poly,
    tier_poly_via_tutte,
    tree_weight,
    tutte_polynomial,
)

SCOPES = ("algebra", "trees", "weight", "counting", "bijections", "permweight")


@dataclass(frozen=True)
class Bounds:
    tree_n: int
    brute_n: int
    cnat_k: int
    perm_n: int
    maxwt_n: int
    sweep_n: int

    @classmethod
    def for_profile(cls, profile: str) -> Bounds:
        if profile == "quick":
            return cls(tree_n=5, brute_n=5, cnat_k=4, perm_n=5, maxwt_n=5, sweep_n=5)
        if profile == "full":
            return cls(tree_n=6, brute_n=6, cnat_k=5, perm_n=7, maxwt_n=8, sweep_n=9)
        raise ValueError(f"unknown profile {profile!r}")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


@dataclass
class VerifyReport:
    profile: str
    scopes: list[str]
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "profile": self.profile,
            "scopes": self.scopes,
            "checks": [{"name": c.name, "status": "pass" if c.ok else "fail", "detail": c.detail}
                       for c in self.checks],
            "summary": {"total": len(self.checks), "passed": self.passed, "failed": self.failed},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def text(self) -> str:
        lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}: {c.detail}" for c in self.checks]
        lines.append(f"{self.passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)


Check = Callable[[], tuple[bool, str]]


def _run(name: str, fn: Check) -> CheckResult:
    try:
        ok, detail = fn()
    except CapacityError:
        raise
    except Exception as exc:  # a crashing check is a failing check
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(ok), detail)


def _mismatches(pairs) -> tuple[bool, str]:
    bad = [str(k) for k, got, want in pairs if got != want]
    total = len(pairs)
    if bad:
        return False, f"{len(bad)}/{total} mismatches, first: {bad[0]}"
    return True, f"{total} cases agree"


def _type_list(max_n: int, min_n: int = 3) -> list[tuple[int, ...]]:
    out = []
    for n in range(min_n, max_n + 1):
        for lam in partitions_iter(n):
            if len(lam) >= 2:
                out.append(tuple(sorted(lam)))
    return out


def _table1_types(max_n: int) -> list[tuple[int, ...]]:
    return [p for p in ref.TIER_POLYS if sum(p) <= max_n]


# ---------------------------------------------------------------------------

def algebra_checks(b: Bounds, rng: random.Random) -> list[tuple[str, Check]]:
    n_max = b.perm_n + 1

    def stirling_brute():
        pairs = []
        for n in range(1, n_max + 1):
            perms = list(permutations(range(n)))
            cyc = [0] * (n + 1)
            des = [0] * n
            for p in perms:
                cyc[len(cycles_of(tuple(a + 1 for a in p)))] += 1
                des[descents(p)] += 1
            for k in range(1, n + 1):
                pairs.append(((n, k, "c"), stirling1(n, k), cyc[k]))
            for k in range(n):
                pairs.append(((n, k, "A"), eulerian(k, n), des[k]))
            blocks = [0] * (n + 1)
            for sp in set_partitions(n):
                blocks[len(sp.blocks)] += 1
            for k in range(1, n + 1):
                pairs.append(((n, k, "S"), stirling2(n, k), blocks[k]))
        return _mismatches(pairs)

    def partitions():
        pairs = [(n, partition_count(n), sum(1 for _ in partitions_iter(n))) for n in range(1, 16)]
        return _mismatches(pairs)

    def exp_log():
        order = 8
        pairs = []
        for trial in range(5):
            coeffs = [0] + [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)]
            s = RatSeries(coeffs, order)
            pairs.append((trial, s.exp().log(), s))
        return _mismatches(pairs)

    return [
        ("algebra: stirling, eulerian vs brute force", stirling_brute),
        ("algebra: partition counts", partitions),
        ("algebra: log(exp(s)) = s on random series", exp_log),
    ]


def trees_checks(b: Bounds, rng: random.Random) -> list[tuple[str, Check]]:
    def prufer():
        return _mismatches([(n, count_labeled_trees(n), n ** (n - 2)) for n in range(2, 8)])

    def brute_counts():
        pairs = []
        for n in range(2, b.brute_n + 1):
            for m in range(2, n + 1):
                pairs.append(((n, m, "T"), count_brute(n, m), count_closed_form(n, m)))
                pairs.append(((n, m, "P"), count_brute(n, m, "proper"), count_proper(n, m)))
        return _mismatches(pairs)

    def tierings():
        pairs = []
        for p in _type_list(b.tree_n):
            pairs.append((p, sum(1 for _ in tier_assignments(p)), math.factorial(sum(p)) // math.prod(math.factorial(a) for a in p)))
        return _mismatches(pairs)

    return [
        ("trees: Pruefer enumeration gives n^(n-2)", prufer),
        ("trees: brute-force counts vs closed forms", brute_counts),
        ("trees: tierings per tier type", tierings),
    ]


def weight_checks(b: Bounds, rng: random.Random, workers: int = 1) -> list[tuple[str, Check]]:
    def activity():
        total = 0
        bad = []
        for p in _type_list(b.tree_n, 2):
            for t in enumerate_tiered_trees(p):
                total += 1
                if tree_weight(t) != external_activity(t).external:
                    bad.append(t)
        if bad:
            return False, f"{len(bad)}/{total} trees differ, first: {bad[0].dumps()}"
        return True, f"weight = external activity on all {total} trees with n <= {b.tree_n}"

    def table1():
        return _mismatches([(p, tier_poly(p, workers), ref.tier_poly_reference(p)) for p in _table1_types(b.tree_n)])

    def tutte():
        pairs = []
        n_max = min(b.tree_n, 5)
        for p in _type_list(n_max, 2):
            n = sum(p)
            for tiers in tier_assignments(p):
                g = CompleteTieredGraph(n, tiers)
                if not g.is_connected():
                    continue
                vs = range(1, n + 1)
                pairs.append(((p, tiers), tutte_polynomial(vs, g.edges), tutte_polynomial(vs, g.edges, "deletion_contraction")))
        cycle = [(1, 2), (2, 3), (3, 4), (1, 4)]
        k4 = [(a, c) for a in range(1, 5) for c in range(a + 1, 5)]
        for name, es in (("C4", cycle), ("K4", k4)):
            pairs.append((name, tutte_polynomial(range(1, 5), es), tutte_polynomial(range(1, 5), es, "deletion_contraction")))
        for p in _type_list(n_max, 3):
            pairs.append(((p, "T(1,q)"), tier_poly_via_tutte(p), tier_poly(p, workers)))
        return _mismatches(pairs)

    def reorder():
        pairs = []
        for p in _type_list(b.tree_n):
            base = tier_poly(p, workers)
            for q in sorted(set(permutations(p))):
                if q != p:
                    pairs.append(((p, q), tier_poly(q, workers), base))
        return _mismatches(pairs)

    def maxmin():
        pairs = []
        for n in range(2, b.tree_n + 2):
            poly = maxmin_polynomial(n, workers)
            euler = IntPoly({k: eulerian(k - 1, n - 1) for k in range(1, n)})
            pairs.append(((n, "q=0"), poly.specialize_second(0), euler))
            pairs.append(((n, "q=1"), poly(1, 1), count_proper(n, 2)))
            if n in ref.MAXMIN:
                pairs.append(((n, "display"), poly, ref.bivar(ref.MAXMIN[n])))
        return _mismatches(pairs)

    return [
        ("weight: weight equals external activity", activity),
        ("weight: tier polynomials match the published table", table1),
        ("weight: Tutte by activities = by deletion-contraction; tier sums", tutte),
        ("weight: tier polynomial ignores part order", reorder),
        ("weight: maxmin polynomials", maxmin),
    ]


def counting_checks(b: Bounds, rng: random.Random) -> list[tuple[str, Check]]:
    def table2():
        pairs = []
        for (n, m), (t, p) in sorted(ref.COUNTS.items()):
            pairs.append(((n, m, "T"), count_closed_form(n, m), t))
            if m >= 2:
                pairs.append(((n, m, "P"), count_proper(n, m), p))
        ok, detail = _mismatches(pairs)
        return ok, detail + "; proper counts subtract C(m, m-k) T(n, m-k)"

    def egf():
        order = 5 if b.tree_n <= 5 else 6
        for m in range(2, 5):
            egf_check(m, order)
        printed = egf_residual(2, order, "printed")
        return True, (f"corrected relation exact through x^{order} for m = 2, 3, 4; "
                      f"printed form is off by {printed[0]} in the constant term (m = 2)")

    def rooted():
        pairs = []
        for n in range(2, min(b.brute_n, 5) + 1):
            for m in range(2, 5):
                want = Fraction(n * count_closed_form(n, m), m)
                for i in range(1, m + 1):
                    pairs.append(((i, n, m), rooted_count(i, n, m), want))
        return _mismatches(pairs)

    return [
        ("counting: published T and P table", table2),
        ("counting: functional equation for the generating function", egf),
        ("counting: rooted counts are (n/m) T", rooted),
    ]


def bijection_checks(b: Bounds, rng: random.Random) -> list[tuple[str, Check]]:
    def perm_tree():
        total = 0
        for n in range(1, b.tree_n + 1):
            images = set()
            for w in permutations(range(1, n + 1)):
                t = perm_to_tree(w)
                total += 1
                if tuple(tree_to_perm(t)) != w or len(t.maxima()) != descents(w) + 1 or tree_weight(t):
                    return False, f"round trip fails at {w}"
                images.add(t)
            zero = {t for k in range(1, n + 1) for t in enumerate_tiered_trees((n + 1 - k, k))
                    if tree_weight(t, validate=False) == 0}
            if images != zero:
                return False, f"n={n}: image is not the set of weight-0 maxmin trees"
        return True, f"{total} permutations round-trip, images are the weight-0 maxmin trees"

    def sampled():
        for _ in range(20):
            n = rng.randint(8, 14)
            w = list(range(1, n + 1))
            rng.shuffle(w)
            t = perm_to_tree(w)
            if tuple(tree_to_perm(t)) != tuple(w) or tree_weight(t):
                return False, f"round trip fails at {w}"
        return True, "20 random permutations with 8 <= n <= 14 round-trip"

    def blocks():
        pairs = []
        for n in range(2, b.perm_n + 1):
            counts = [0] * (n + 1)
            for w in permutations(range(1, n + 1)):
                counts[decompose(w).block_count()] += 1
            for k in range(1, n):
                pairs.append(((n, k), counts[k], n * stirling1(n - 1, k)))
        return _mismatches(pairs)

    def insertion():
        cyc = [(2, 3, 7), (4, 1, 8), (6, 9), (5,)]
        # expected words: the 0-based ones 6941850372 and 6941823750 shifted up by one
        got = str(cycle_insertion(cyc, 2))
        own = str(cycle_insertion(cyc, None))
        want = "7,10,5,2,9,6,1,4,8,3"
        want_own = "7,10,5,2,9,3,4,8,6,1"
        ok = got == want and own == want_own
        return ok, f"after 2: {got}; own cycle: {own}"

    def cnat():
        pairs = []
        for k in range(b.cnat_k + 1):
            pairs.append(((k, "count"), sum(1 for _ in enumerate_cnat(k)), ref.CNAT_COUNTS[k]))
        for k in range(min(b.cnat_k, 4) + 1):
            if k >= 1:
                pairs.append(((k, "q^0"), tier_poly((1,) * (k + 1)).coeff(0), ref.CNAT_COUNTS[k]))
        return _mismatches(pairs)

    def cnat_bijection():
        total = 0
        for k in range(min(b.cnat_k, 4) + 1):
            for c in enumerate_cnat(k):
                t = cnat_to_tiered(c)
                total += 1
                if tree_weight(t) or tiered_to_cnat(t) != c:
                    return False, f"round trip fails at {c.dumps()}"
        return True, f"{total} trees round-trip"

    def bessel():
        order = b.cnat_k + 1
        coeffs = bessel_check(order)
        return True, "coefficients " + ", ".join(str(c) for c in coeffs[1:])

    return [
        ("bijections: permutations <-> weight-0 maxmin trees", perm_tree),
        ("bijections: sampled round trips", sampled),
        ("bijections: block counts are n c(n-1, k)", blocks),
        ("bijections: cycle insertion example", insertion),
        ("bijections: CNAT counts", cnat),
        ("bijections: CNAT <-> weight-0 fully tiered trees", cnat_bijection),
        ("bijections: Bessel series", bessel),
    ]


def permweight_checks(b: Bounds, rng: random.Random) -> list[tuple[str, Check]]:
    def displays():
        pairs = [(n, q_eulerian(n), ref.bivar(t)) for n, t in ref.Q_EULERIAN.items()]
        pairs += [((n, "S"), stanley_q_eulerian(n), ref.bivar(t)) for n, t in ref.STANLEY.items()]
        return _mismatches(pairs)

    def oracle():
        pairs = []
        for n in range(1, min(b.tree_n, 6) + 1):
            best = perm_weight_oracle(n)
            for w in permutations(range(1, n + 1)):
                pairs.append((w, perm_weight(w), best[w]))
        return _mismatches(pairs)

    def stirling():
        pairs = []
        for n in range(1, b.maxwt_n + 1):
            zero = [0] * (n + 1)
            for w in permutations(range(1, n + 1)):
                if perm_weight(w) == 0:
                    zero[descents(w) + 1] += 1
            for k in range(1, n + 1):
                pairs.append(((n, k), zero[k], stirling2(n, k)))
        for n in range(1, 7):
            for sp in set_partitions(n):
                pi = partition_to_perm(sp)
                pairs.append(((str(sp),), perm_to_partition(pi), sp))
        return _mismatches(pairs)

    def coefficients():
        details = []
        for n in range(3, b.sweep_n + 1):
            r = coefficient_checks(n)
            if not r.ok:
                return False, "; ".join(r.details)
            details.append(n)
        return True, f"x^0, x^1, x^(n-2), x^(n-1) closed forms hold for n = 3..{b.sweep_n}"

    def maxwt():
        for n in range(2, b.maxwt_n + 1):
            r = max_weight_check(n)
            if not r.ok:
                return False, "; ".join(d for d in r.details if "expected" in d or "changed" in d)
        return True, f"maximum d(n-1-d) attained uniquely, final-ascent removal keeps the weight, n <= {b.maxwt_n}"

    def recursion():
        return _mismatches([(n, q_eulerian_recursive(n), q_eulerian(n)) for n in range(b.sweep_n + 1)])

    def stabilization():
        n_max = b.sweep_n
        notes = []
        ok = True
        for d in range(1, 5):
            if d > n_max - 2:
                continue
            r = wd_prefix(d, n_max)
            listed = tuple(ref.W_SERIES[d][: ref.W_ASSERTED[d]])
            at_n = r.coefficients[1]
            consistent = listed[: r.stable_upto] == r.prefix[: len(listed)]
            if n_max == 9:
                ok &= at_n[: len(listed)] == listed and consistent
            notes.append(f"d={d}: n={n_max} row starts {at_n[:len(listed)]}, stable for {r.stable_upto}")
        # a longer run through the recursion
        for d in range(1, 5):
            r = wd_prefix(d, 16, method="recursive")
            want = tuple(ref.W_SERIES[d])
            agree = triangle_agreement(r)
            ok &= r.prefix[: len(want)] == want and agree == ref.TRIANGLE_AGREEMENT[d]
            notes.append(f"d={d}: n=15,16 agree on {r.prefix[:len(want)]}, triangle agreement {agree}")
        return ok, "empirical; " + "; ".join(notes)

    def triangle():
        pairs = [(k, triangle_row(k, len(row)), tuple(row)) for k, row in ref.TRIANGLE.items()]
        return _mismatches(pairs)

    return [
        ("permweight: E_4..E_6 and Stanley displays", displays),
        ("permweight: weight = best tree weight", oracle),
        ("permweight: weight-0 permutations and set partitions", stirling),
        ("permweight: extreme coefficients", coefficients),
        ("permweight: maximum weights", maxwt),
        ("permweight: recursive E_n = sweep", recursion),
        ("permweight: stabilized coefficients", stabilization),
        ("permweight: two-colour partition triangle", triangle),
    ]


SUITES = {
    "algebra": algebra_checks,
    "trees": trees_checks,
    "weight": weight_checks,
    "counting": counting_checks,
    "bijections": bijection_checks,
    "permweight": permweight_checks,
}


def run_verify(scopes: list[str], profile: str = "quick", seed: int = 0, workers: int = 1,
               progress: Callable[[CheckResult], None] | None = None) -> VerifyReport:
    bounds = Bounds.for_profile(profile)
    report = VerifyReport(profile, list(scopes))
    for scope in scopes:
        rng = random.Random(f"{seed}:{scope}")
        if scope == "weight":
            checks = weight_checks(bounds, rng, workers)
        else:
            checks = SUITES[scope](bounds, rng)
        for name, fn in checks:
            res = _run(name, fn)
            report.checks.append(res)
            if progress:
                progress(res)
    return report
