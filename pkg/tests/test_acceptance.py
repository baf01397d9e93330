"""End-to-end acceptance criteria, all compared exactly.

Each test records one PASS/FAIL line (shown in the terminal summary) before
asserting, so a failing criterion still reports what it saw.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from tieredtrees import reference as ref
from tieredtrees.algebra import IntPoly, eulerian, stirling1, stirling2
from tieredtrees.bijections import (
    bessel_series,
    cnat_to_tiered,
    decompose,
    enumerate_cnat,
    perm_to_tree,
    tiered_to_cnat,
    tree_to_perm,
)
from tieredtrees.counting import count_closed_form, count_proper, egf_residual, rooted_count
from tieredtrees.permweight import (
    coefficient_checks,
    descents,
    max_weight_check,
    perm_weight,
    q_eulerian,
    stanley_q_eulerian,
    triangle_agreement,
    triangle_row,
    wd_prefix,
)
from tieredtrees.trees import CompleteTieredGraph, compositions, count_brute, enumerate_tiered_trees, tier_assignments
from tieredtrees.weight import external_activity, maxmin_polynomial, tier_poly, tier_poly_via_tutte, tree_weight, tutte_polynomial


def _tier_types(max_n: int, min_n: int = 2):
    """Every composition with at least two parts."""
    return [p for n in range(min_n, max_n + 1) for m in range(2, n + 1) for p in compositions(n, m)]


def _first_bad(pairs):
    for key, got, want in pairs:
        if got != want:
            return f"mismatch at {key}: got {got}, expected {want}"
    return None


def test_01_tier_polynomial_table(criterion):
    pairs = [(p, tier_poly(p), ref.tier_poly_reference(p)) for p in ref.TIER_POLYS]
    bad = _first_bad(pairs)
    total = tier_poly((1,) * 6)(1)
    ok = bad is None and len(pairs) == 18 and total == 46620
    criterion(1, ok, bad or f"18 polynomials exact; (1^6) has {total} trees")
    assert ok


def test_02_count_table(criterion):
    pairs = []
    for (n, m), (t, p) in ref.COUNTS.items():
        pairs.append(((n, m, "T"), count_closed_form(n, m), t))
        pairs.append(((n, m, "P"), count_proper(n, m) if m >= 2 else 0, p))
        pairs.append(((n, m, "T brute"), count_brute(n, m), t))
        pairs.append(((n, m, "P brute"), count_brute(n, m, "proper"), p))
    bad = _first_bad(pairs)
    criterion(2, bad is None, bad or f"{len(ref.COUNTS)} entries, closed forms and brute force agree")
    assert bad is None


def test_03_weight_is_external_activity(criterion):
    total, bad = 0, None
    for p in _tier_types(6):
        for t in enumerate_tiered_trees(p):
            total += 1
            if tree_weight(t) != external_activity(t).external:
                bad = t.dumps()
                break
        if bad:
            break
    criterion(3, bad is None, f"mismatch at {bad}" if bad else f"{total} trees, zero mismatches")
    assert bad is None


def test_04_tutte_consistency(criterion):
    pairs = []
    graphs = 0
    for p in _tier_types(5):
        n = sum(p)
        for tiers in tier_assignments(p):
            g = CompleteTieredGraph(n, tiers)
            if g.is_connected():
                graphs += 1
                vs = range(1, n + 1)
                pairs.append(((p, tiers), tutte_polynomial(vs, g.edges), tutte_polynomial(vs, g.edges, "deletion_contraction")))
        pairs.append(((p, "sum"), tier_poly_via_tutte(p), tier_poly(p)))
    c4 = [(1, 2), (2, 3), (3, 4), (1, 4)]
    k4 = list(combinations(range(1, 5), 2))
    for name, es in (("C4", c4), ("K4", k4)):
        pairs.append((name, tutte_polynomial(range(1, 5), es), tutte_polynomial(range(1, 5), es, "deletion_contraction")))
    bad = _first_bad(pairs)
    criterion(4, bad is None, bad or f"{graphs} complete tiered graphs plus C4, K4; tier sums agree")
    assert bad is None


def test_05_part_order_invariance(criterion):
    polys = {p: tier_poly(p) for p in _tier_types(6, 3)}
    pairs = [(p, poly, polys[tuple(sorted(p))]) for p, poly in polys.items()]
    bad = _first_bad(pairs)
    criterion(5, bad is None, bad or f"{len(polys)} tier types, polynomial depends only on the multiset of parts")
    assert bad is None


def test_06_maxmin_polynomial(criterion):
    pairs = []
    for n in range(2, 8):
        poly = maxmin_polynomial(n)
        pairs.append(((n, "q=0"), poly.specialize_second(0), IntPoly({k: eulerian(k - 1, n - 1) for k in range(1, n)})))
        pairs.append(((n, "q=1"), poly(1, 1), count_closed_form(n, 2)))
    bad = _first_bad(pairs)
    criterion(6, bad is None, bad or "Eulerian specialization and totals hold for n <= 7")
    assert bad is None


def test_07_permutation_tree_bijection(criterion):
    bad = None
    for n in range(1, 7):
        images = set()
        for w in permutations(range(1, n + 1)):
            t = perm_to_tree(w)
            if tuple(tree_to_perm(t)) != w or len(t.maxima()) != descents(w) + 1:
                bad = f"{w}"
            images.add(t)
        zero = {t for k in range(1, n + 1) for t in enumerate_tiered_trees((n + 1 - k, k)) if tree_weight(t) == 0}
        if images != zero:
            bad = bad or f"n={n}: image differs from the weight-0 maxmin trees"
    criterion(7, bad is None, bad or "mutually inverse on S_n for n <= 6; image = weight-0 maxmin trees")
    assert bad is None


def test_08_stirling_counts(criterion):
    pairs = []
    for n in range(1, 9):
        zero = [0] * (n + 1)
        for w in permutations(range(1, n + 1)):
            if perm_weight(w) == 0:
                zero[descents(w) + 1] += 1
        pairs += [((n, k, "weight 0"), zero[k], stirling2(n, k)) for k in range(1, n + 1)]
    for n in range(2, 8):
        blocks = [0] * (n + 1)
        for w in permutations(range(1, n + 1)):
            blocks[decompose(w).block_count()] += 1
        pairs += [((n, k, "blocks"), blocks[k], n * stirling1(n - 1, k)) for k in range(1, n)]
    bad = _first_bad(pairs)
    criterion(8, bad is None, bad or "weight-0 counts (n <= 8) and block counts (n <= 7) exact")
    assert bad is None


def test_09_cnats(criterion):
    counts = [sum(1 for _ in enumerate_cnat(k)) for k in range(6)]
    pairs = [("counts", counts, ref.CNAT_COUNTS)]
    pairs += [((k, "q^0"), tier_poly((1,) * (k + 1)).coeff(0), ref.CNAT_COUNTS[k]) for k in range(1, 6)]
    series = bessel_series(6)
    from math import factorial

    pairs += [((k, "bessel"), series[k], Fraction(ref.CNAT_COUNTS[k - 1], factorial(k) ** 2)) for k in range(1, 7)]
    trips = 0
    for k in range(5):
        for c in enumerate_cnat(k):
            t = cnat_to_tiered(c)
            trips += 1
            pairs.append(((k, c.dumps()), (tiered_to_cnat(t), tree_weight(t)), (c, 0)))
    bad = _first_bad(pairs)
    criterion(9, bad is None, bad or f"counts {tuple(counts)}, Bessel series through x^6, {trips} round trips")
    assert bad is None


def test_10_q_eulerian(criterion):
    pairs = [((n, "display"), q_eulerian(n), ref.bivar(ref.Q_EULERIAN[n])) for n in (4, 5, 6)]
    pairs += [((n, "coefficients"), coefficient_checks(n).ok, True) for n in range(3, 10)]
    pairs += [((n, "max weight"), max_weight_check(n).ok, True) for n in range(2, 9)]
    bad = _first_bad(pairs)
    criterion(10, bad is None, bad or "displays n = 4..6, closed forms n <= 9, maximum and final-ascent lemma n <= 8")
    assert bad is None


def test_11_stanley(criterion):
    bad = _first_bad([(n, stanley_q_eulerian(n), ref.bivar(ref.STANLEY[n])) for n in (3, 4)])
    criterion(11, bad is None, bad or "n = 3 and n = 4 exact (the second display is for n = 4)")
    assert bad is None


def test_12_generating_function(criterion):
    pairs = []
    for m in (2, 3, 4):
        res = egf_residual(m, 5)
        pairs.append(((m, "residual"), res.is_zero(), True))
    for n in range(2, 6):
        for m in range(2, 5):
            want = Fraction(n * count_closed_form(n, m), m)
            pairs += [((i, n, m), rooted_count(i, n, m), want) for i in range(1, m + 1)]
    bad = _first_bad(pairs)
    criterion(12, bad is None, bad or "zero residual through x^5 for m = 2..4; rooted counts exact for n <= 5")
    assert bad is None


def test_13_stabilized_coefficients(criterion):
    polys = {8: q_eulerian(8), 9: q_eulerian(9)}
    notes, ok = [], True
    for d in range(1, 5):
        r = wd_prefix(d, 9, polys)
        listed = tuple(ref.W_SERIES[d][: ref.W_ASSERTED[d]])
        agree = triangle_agreement(r)
        good = r.prefix[: len(listed)] == listed and agree == ref.TRIANGLE_AGREEMENT[d]
        ok &= good
        if not good:
            notes.append(f"W_{d}: n=8,9 agree on {r.prefix} only (n=8 row {r.coefficients[0][:len(listed)]}, "
                         f"n=9 row {r.coefficients[1][:len(listed)]}), triangle agreement {agree}")
    rows = all(triangle_row(k, len(v)) == tuple(v) for k, v in ref.TRIANGLE.items())
    ok &= rows
    detail = "; ".join(notes) if notes else "W_1..W_4 prefixes and triangle agreements 2, 3, 4, 5"
    if notes:
        # informational only: the recursion reaches larger n without a sweep
        wide = [wd_prefix(d, 10, method="recursive") for d in range(1, 5)]
        detail += (" [beyond n = 9: n=9,10 give W_4 prefix "
                   f"{wide[3].prefix[:5]}, agreements {tuple(triangle_agreement(r) for r in wide)}]")
    criterion(13, ok, detail + ("" if rows else "; triangle values differ"))
    assert ok
