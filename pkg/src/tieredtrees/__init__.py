"""Tiered trees, their weights, and the permutation statistics built on them."""

from __future__ import annotations

from .algebra import BivarPoly, IntPoly, RatSeries, eulerian, stirling1, stirling2
from .bijections import (
    CompleteNonambiguousTree,
    Permutation,
    cnat_to_tiered,
    cycle_insertion,
    enumerate_cnat,
    perm_to_tree,
    tiered_to_cnat,
    tree_to_perm,
)
from .counting import count_closed_form, count_proper, count_table, egf_check
from .errors import CapacityError, DomainError, InvalidTreeError, VerificationError
from .permweight import (
    SetPartition,
    partition_to_perm,
    perm_to_partition,
    perm_weight,
    q_eulerian,
    q_eulerian_recursive,
    stanley_q_eulerian,
    wd_prefix,
)
from .trees import CompleteTieredGraph, TieredTree, TierType, count_brute, enumerate_tiered_trees
from .weight import external_activity, maxmin_polynomial, tier_poly, tree_weight, tutte_polynomial

__version__ = "0.1.0"

__all__ = [
    "BivarPoly", "IntPoly", "RatSeries", "eulerian", "stirling1", "stirling2",
    "CompleteNonambiguousTree", "Permutation", "cnat_to_tiered", "cycle_insertion",
    "enumerate_cnat", "perm_to_tree", "tiered_to_cnat", "tree_to_perm",
    "count_closed_form", "count_proper", "count_table", "egf_check",
    "CapacityError", "DomainError", "InvalidTreeError", "VerificationError",
    "SetPartition", "partition_to_perm", "perm_to_partition", "perm_weight",
    "q_eulerian", "q_eulerian_recursive", "stanley_q_eulerian", "wd_prefix",
    "CompleteTieredGraph", "TieredTree", "TierType", "count_brute", "enumerate_tiered_trees",
    "external_activity", "maxmin_polynomial", "tier_poly", "tree_weight", "tutte_polynomial",
]
