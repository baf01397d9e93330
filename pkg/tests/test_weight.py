from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tieredtrees import reference as ref
from tieredtrees.algebra import BivarPoly, IntPoly, eulerian
from tieredtrees.errors import DomainError, InvalidTreeError
from tieredtrees.trees import CompleteTieredGraph, TieredTree, enumerate_tiered_trees, maxmin_tree, tier_assignments
from tieredtrees.weight import (
    edge_activities,
    external_activity,
    maxmin_polynomial,
    tier_poly,
    tier_poly_brute,
    tier_poly_via_tutte,
    tree_weight,
    tutte_polynomial,
)


def _weight_oracle(tree):
    """Direct transcription of the delete-minimum recursion on vertex sets."""
    adj = tree.adjacency()

    def comps(vs):
        left, out = set(vs), []
        while left:
            s = min(left)
            c, stack = {s}, [s]
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    if b in left and b not in c:
                        c.add(b)
                        stack.append(b)
            left -= c
            out.append(c)
        return out

    def w(vs):
        if len(vs) <= 1:
            return 0
        v = min(vs)
        total = 0
        for c in comps(vs - {v}):
            (u,) = [b for b in adj[v] if b in c]
            total += sum(1 for x in c if tree.tier(x) > tree.tier(v) and x < u) + w(c)
        return total

    return w(set(range(1, tree.n + 1)))


def test_small_examples():
    # four vertices, maxima 3 and 4, the minimum 1 hangs on 4 instead of 3
    t = maxmin_tree(4, [3, 4], [(1, 4), (2, 3), (2, 4)])
    assert tree_weight(t) == 1
    assert external_activity(t).external == 1
    # fully tiered on three vertices: 1 could have gone to 2 instead of 3
    f = TieredTree(3, (1, 2, 3), ((1, 3), (2, 3)))
    assert tree_weight(f) == 1
    star = maxmin_tree(4, [4], [(1, 4), (2, 4), (3, 4)])
    assert tree_weight(star) == 0


def test_weight_rejects_invalid_trees():
    with pytest.raises(InvalidTreeError):
        tree_weight(TieredTree(3, (1, 2, 2), ((1, 2), (2, 3))))


@pytest.mark.parametrize("parts", [(2, 2), (1, 1, 2), (1, 2, 1), (2, 3), (1, 2, 2), (1, 1, 1, 1), (3, 1, 1)])
def test_weight_matches_oracle_and_activity(parts):
    for t in enumerate_tiered_trees(parts):
        w = tree_weight(t)
        assert w == _weight_oracle(t)
        assert w == external_activity(t).external


def test_activity_report_edges():
    t = maxmin_tree(4, [3, 4], [(1, 4), (2, 3), (2, 4)])
    rep = external_activity(t)
    assert rep.external_edges == ((1, 3),)
    assert rep.internal + rep.external == len(rep.internal_edges) + len(rep.external_edges)


def test_tutte_small_graphs():
    c4 = [(1, 2), (2, 3), (3, 4), (1, 4)]
    tri = [(1, 2), (1, 3), (2, 3)]
    want_c4 = BivarPoly({(3, 0): 1, (2, 0): 1, (1, 0): 1, (0, 1): 1})
    want_tri = BivarPoly({(2, 0): 1, (1, 0): 1, (0, 1): 1})
    for method in ("activities", "deletion_contraction"):
        assert tutte_polynomial(range(1, 5), c4, method) == want_c4
        assert tutte_polynomial(range(1, 4), tri, method) == want_tri
    k4 = [(a, b) for a, b in combinations(range(1, 5), 2)]
    t = tutte_polynomial(range(1, 5), k4)
    assert t == tutte_polynomial(range(1, 5), k4, "deletion_contraction")
    assert t(1, 1) == 16 and t(2, 2) == 2 ** 6


def test_tutte_with_loops_and_parallel_edges():
    es = [(1, 2), (1, 2), (2, 2)]
    a = tutte_polynomial((1, 2), es)
    assert a == tutte_polynomial((1, 2), es, "deletion_contraction")
    assert a == BivarPoly({(1, 1): 1, (0, 2): 1})


def test_tutte_rejects_disconnected():
    with pytest.raises(DomainError):
        tutte_polynomial(range(1, 4), [(1, 2)])


@given(st.permutations(range(6)))
def test_activity_tutte_does_not_depend_on_edge_order(order):
    k4 = [(a, b) for a, b in combinations(range(1, 5), 2)]
    shuffled = [k4[i] for i in order]
    assert tutte_polynomial(range(1, 5), shuffled) == tutte_polynomial(range(1, 5), k4)


def test_edge_activities_on_a_path_tree():
    es = [(1, 2), (2, 3), (1, 3)]
    internal, external = edge_activities((1, 2, 3), es, [0, 1])
    assert internal == [0, 1] and external == []


@pytest.mark.parametrize("parts", [p for p in ref.TIER_POLYS if sum(p) <= 5])
def test_table_polynomials_up_to_five(parts):
    want = ref.tier_poly_reference(parts)
    assert tier_poly(parts) == want
    assert tier_poly_via_tutte(parts) == want


def test_brute_and_graph_driven_sums_agree():
    for p in [(1, 2), (2, 1, 1), (2, 2, 1)]:
        assert tier_poly_brute(p) == tier_poly(p)


def test_workers_do_not_change_the_result():
    assert tier_poly((1, 2, 2), workers=2) == tier_poly((1, 2, 2), workers=1)


@pytest.mark.parametrize("parts", [(1, 1, 2), (1, 2, 2), (1, 1, 1, 2)])
def test_part_order_is_irrelevant(parts):
    base = tier_poly(parts)
    for q in set(permutations(parts)):
        assert tier_poly(q) == base


@pytest.mark.parametrize("n", [4, 5])
def test_maxmin_polynomial(n):
    poly = maxmin_polynomial(n)
    assert poly == ref.bivar(ref.MAXMIN[n])
    assert poly.specialize_second(0) == IntPoly({k: eulerian(k - 1, n - 1) for k in range(1, n)})


def test_tierings_without_trees_are_skipped():
    # a tiering whose complete graph is disconnected contributes nothing
    bad = [t for t in tier_assignments((2, 2)) if not CompleteTieredGraph(4, t).is_connected()]
    assert bad
    assert sum(1 for _ in enumerate_tiered_trees((2, 2))) == tier_poly((2, 2))(1) == 5
