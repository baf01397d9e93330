from __future__ import annotations

import math
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tieredtrees import reference as ref
from tieredtrees.algebra import IntPoly, eulerian, partitions_iter, stirling2
from tieredtrees.errors import CapacityError, DomainError
from tieredtrees.permweight import (
    SetPartition,
    StabilizationReport,
    coefficient_checks,
    descents,
    inversions,
    max_weight_check,
    max_weight_permutation,
    partition_to_perm,
    perm_to_partition,
    perm_weight,
    perm_weight_oracle,
    promotion,
    q_eulerian,
    q_eulerian_recursive,
    set_partitions,
    stanley_q_eulerian,
    top_down,
    triangle_agreement,
    triangle_row,
    two_colored_triangle,
    wd_prefix,
    x1_coefficient_formula,
    xn2_coefficient_formula,
)


def _zero_based(word):
    return tuple("0123456789ABCDEFGHIJ".index(c) + 1 for c in word)


def _coloured_words(n, k):
    """Partitions of n written as weakly decreasing words, each letter marked
    or not, with exactly k marks; positions matter (1'11 differs from 11'1)."""
    out = 0
    for lam in partitions_iter(n):
        out += sum(1 for mask in range(1 << len(lam)) if bin(mask).count("1") == k)
    return out


def test_statistics():
    assert descents((3, 1, 2)) == 1
    assert inversions((3, 1, 2)) == 2


def test_worked_weights():
    assert perm_weight(_zero_based("15A86290374")) == 4
    assert perm_weight((1, 3, 2)) == 1
    assert perm_weight((1, 3, 2, 4)) == 1
    assert perm_weight((4, 3, 2, 1)) == 0
    assert perm_weight(()) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_weight_is_the_best_tree_weight(n):
    best = perm_weight_oracle(n)
    assert len(best) == math.factorial(n)
    for w in permutations(range(1, n + 1)):
        assert perm_weight(w) == best[w]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_displays(n):
    assert q_eulerian(n) == ref.bivar(ref.Q_EULERIAN[n])


@pytest.mark.parametrize("n", [3, 4])
def test_stanley_displays(n):
    assert stanley_q_eulerian(n) == ref.bivar(ref.STANLEY[n])


@pytest.mark.parametrize("n", range(0, 9))
def test_recursion_matches_sweep(n):
    assert q_eulerian_recursive(n) == q_eulerian(n)


def test_recursive_form_keeps_the_eulerian_numbers():
    for n in range(1, 14):
        e = q_eulerian_recursive(n).specialize_second(1)
        assert e == IntPoly({k: eulerian(k, n) for k in range(n)})


def test_sweep_capacity():
    with pytest.raises(CapacityError):
        q_eulerian(10)
    with pytest.raises(DomainError):
        q_eulerian(-1)


@pytest.mark.parametrize("n", range(3, 9))
def test_extreme_coefficients(n):
    e = q_eulerian_recursive(n)
    assert e.x_coefficient(1) == x1_coefficient_formula(n)
    assert e.x_coefficient(n - 2) == xn2_coefficient_formula(n)
    assert coefficient_checks(n, e).ok


@pytest.mark.parametrize("n", range(2, 8))
def test_maximum_weight(n):
    report = max_weight_check(n)
    assert report.ok, report.details
    for d in range(n):
        assert perm_weight(max_weight_permutation(n, d)) == d * (n - 1 - d)


def test_max_weight_permutation_shape():
    assert max_weight_permutation(6, 2) == (1, 2, 3, 6, 5, 4)
    with pytest.raises(DomainError):
        max_weight_permutation(4, 4)


@given(st.permutations(range(1, 10)))
def test_final_ascent_keeps_weight(w):
    w = tuple(w) + (10,)
    assert perm_weight(w) == perm_weight(w[:-1])


# --- set partitions ----------------------------------------------------------------

def test_partition_example():
    blocks = [[_zero_based(c)[0] for c in b] for b in ("25", "6130", "798", "4")]
    pi = partition_to_perm(blocks)
    assert "".join("0123456789"[a - 1] for a in pi) == "7892540136"
    assert descents(pi.word) == 3 and perm_weight(pi) == 0
    assert perm_to_partition(pi) == SetPartition(tuple(tuple(b) for b in blocks))


@pytest.mark.parametrize("n", range(1, 8))
def test_weight_zero_permutations_are_counted_by_stirling2(n):
    by_descents = [0] * n
    for w in permutations(range(1, n + 1)):
        if perm_weight(w) == 0:
            by_descents[descents(w)] += 1
    assert by_descents == [stirling2(n, k + 1) for k in range(n)]


@pytest.mark.parametrize("n", range(1, 7))
def test_partitions_round_trip(n):
    parts = list(set_partitions(n))
    assert len(parts) == len(set(parts)) == sum(stirling2(n, k) for k in range(n + 1))
    for sp in parts:
        pi = partition_to_perm(sp)
        assert perm_to_partition(pi) == sp
        assert descents(pi.word) == len(sp.blocks) - 1


def test_partition_validation():
    with pytest.raises(DomainError):
        SetPartition(((1, 3),))
    with pytest.raises(DomainError):
        perm_to_partition((1, 3, 2))
    assert str(SetPartition(((3, 1), (2,)))) == "1,3|2"


def test_promotion_shape():
    assert tuple(promotion((2, 3, 1))) == (1, 3, 4, 2)
    with pytest.raises(DomainError):
        promotion((1, 2, 3))


@pytest.mark.parametrize("n", range(2, 8))
def test_promotion_adds_one_to_the_weight(n):
    for w in permutations(range(1, n + 1)):
        if descents(w) == 1:
            p = tuple(promotion(w))
            assert descents(p) == 1
            assert perm_weight(p) == perm_weight(w) + 1


# --- stabilization and the triangle ------------------------------------------------

def test_triangle_values():
    assert [two_colored_triangle(3, k) for k in range(4)] == [3, 6, 4, 1]
    for k, row in ref.TRIANGLE.items():
        assert triangle_row(k, len(row)) == tuple(row)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in range(n + 1)])
def test_triangle_against_listing(n, k):
    assert two_colored_triangle(n, k) == _coloured_words(n, k)


def test_top_down():
    assert top_down(IntPoly([7, 3, 1])) == (1, 3, 7)


def test_wd_prefix_from_small_n():
    r = wd_prefix(1, 6)
    assert isinstance(r, StabilizationReport)
    assert r.n_values == (5, 6)
    assert r.prefix == (1, 3, 7, 15)
    with pytest.raises(CapacityError):
        wd_prefix(1, 10)
    with pytest.raises(DomainError):
        wd_prefix(0, 6)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_wd_prefix_from_the_recursion(d):
    r = wd_prefix(d, 16, method="recursive")
    assert r.prefix[: len(ref.W_SERIES[d])] == tuple(ref.W_SERIES[d])
    assert triangle_agreement(r) == ref.TRIANGLE_AGREEMENT[d]
    assert triangle_agreement(r.prefix, d) == ref.TRIANGLE_AGREEMENT[d]
