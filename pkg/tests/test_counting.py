from __future__ import annotations

import math
from fractions import Fraction

import pytest

from tieredtrees import reference as ref
from tieredtrees.counting import (
    count_closed_form,
    count_proper,
    count_table,
    egf_check,
    egf_residual,
    rooted_count,
    rooted_series,
    tm_series,
)
from tieredtrees.errors import CapacityError, DomainError, VerificationError
from tieredtrees.trees import count_brute


def test_published_table():
    for (n, m), (t, p) in ref.COUNTS.items():
        assert count_closed_form(n, m) == t
        if m >= 2:
            assert count_proper(n, m) == p


def test_two_tiers_equal_proper_two_tiers():
    for n in range(2, 10):
        assert count_closed_form(n, 2) == count_proper(n, 2)


def test_inclusion_exclusion_uses_smaller_tier_counts():
    # T_{n,m} = sum_j C(m, j) P_{n,j}: every tiering uses some set of j tiers
    for n in range(2, 8):
        for m in range(2, 7):
            assert count_closed_form(n, m) == sum(math.comb(m, j) * count_proper(n, j) for j in range(2, m + 1))


def test_domain():
    with pytest.raises(DomainError):
        count_closed_form(1, 3)
    with pytest.raises(DomainError):
        count_proper(4, 1)


def test_rooted_counts():
    assert rooted_count(1, 4, 3) == 96
    for n in range(2, 5):
        for m in range(2, 4):
            want = Fraction(n * count_closed_form(n, m), m)
            assert all(rooted_count(i, n, m) == want for i in range(1, m + 1))
    with pytest.raises(CapacityError):
        rooted_count(1, 9, 2)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_functional_equation(m):
    res = egf_check(m, 6)
    assert res.is_zero()


def test_printed_relation_is_off():
    res = egf_residual(3, 4, "printed")
    assert res[0] == -3
    with pytest.raises(DomainError):
        egf_residual(3, 4, "other")


def test_series_coefficients():
    t = tm_series(2, 4)
    assert t[1] == count_closed_form(2, 2) == 1
    assert t[2] * 2 == count_closed_form(3, 2)
    m = rooted_series(3, 3)
    assert m[1] == 1 and m[2] == Fraction(2 * count_closed_form(2, 3), 3) / 2


def test_egf_check_raises_on_a_bad_series(monkeypatch):
    import tieredtrees.counting as counting

    monkeypatch.setattr(counting, "count_closed_form", lambda n, m: 1)
    with pytest.raises(VerificationError):
        counting.egf_check(2, 3)


def test_table_output():
    table = count_table(4)
    lines = table.to_csv().splitlines()
    assert lines[0] == "n,m,T,P"
    assert lines[1:] == ["3,1,0,0", "3,2,2,2", "3,3,11,5", "4,1,0,0", "4,2,7,7", "4,3,72,51", "4,4,306,60"]
    assert table.to_json()[2] == {"n": 3, "m": 3, "T": "11", "P": "5"}


def test_brute_agrees_for_six_vertices():
    assert count_brute(6, 3) == 8868
    assert count_brute(6, 3, "proper") == 8130
