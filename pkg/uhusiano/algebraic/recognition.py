"""
Recover the group of a scheme with a regular automorphism group, and place it among the four groups of
order 4p² with a normal Sylow p-subgroup `C_p × C_p` and quotient `C_2 × C_2`.
"""

import logging
from math import isqrt
from typing import Optional

import numpy as np
from sympy import isprime

from uhusiano.models.config import DEFAULT_BUDGET
from uhusiano.models.perms import Regularity
from uhusiano.models.reports import RecognitionReport
from uhusiano.groups.table import GroupTable
from uhusiano.groups.candidates import classify_by_census, order_census, sylow_p_count
from uhusiano.perms.group import PermGroup, regularity_class
from uhusiano.perms.search import automorphism_group
from uhusiano.schemes.scheme import Scheme
from uhusiano.schemes.properties import symmetric_valency_colors

logger = logging.getLogger(__name__)


class RecognitionError(ValueError):
    """
    Raised when a scheme's automorphism group is not regular, or its group matches no candidate.
    """


def recover_regular_group(
    scheme: Scheme, group: Optional[PermGroup] = None, budget: int = DEFAULT_BUDGET
) -> GroupTable:
    """
    Realize the points as a group `H` acting regularly by automorphisms.

    With base point `0` and `g_x` the unique automorphism sending `0` to `x`, the product is `x y = g_y(x)`.
    Point `0` is the identity, and the scheme is the Cayley scheme of `H` with `X(s) = {x : (0, x) ∈ s}`.

    Raises:
        RecognitionError: if the automorphism group is not regular.
    """
    if group is None:
        group = automorphism_group(scheme, budget=budget)
    kind = regularity_class(group)
    if kind != Regularity.regular:
        e = f"Automorphism group of order {group.order} is {kind.value}, not regular."
        raise RecognitionError(e)
    n = scheme.degree
    table = np.empty((n, n), dtype=np.int64)
    for g in group.elements():
        table[:, g(0)] = g.image
    return GroupTable(table, label="recovered")


def recover_group_of_regular_scheme(
    scheme: Scheme, group: Optional[PermGroup] = None, budget: int = DEFAULT_BUDGET
) -> tuple[GroupTable, RecognitionReport]:
    """
    Recover `H` and check the counting argument that singles out `C_2p × C_2p`:

    - `H` has a unique Sylow p-subgroup, isomorphic to `C_p × C_p`, with quotient of exponent 2.
    - Every involution of `H` lies in a nontrivial inverse-closed basic set, so `k_2(H) ≤ 3p`.
    - The subgroups `U_i` generated by the three inverse-closed basic sets of size `p` have order `2p`,
      meet pairwise trivially, and are all cyclic.

    Failed checks are recorded in the report; only the census decides the label.

    Parameters:
        scheme: A scheme of degree `4p²`, `p ≥ 5` prime.
        group: Precomputed automorphism group.
        budget: Node budget of the automorphism search.

    Raises:
        RecognitionError: if the degree is not `4p²`, the automorphism group is not regular, or the census
            matches none of the four candidates.

    Returns:
        The group and the report.
    """
    n = scheme.degree
    p = isqrt(n // 4)
    if 4 * p * p != n or not isprime(p) or p < 5:
        e = f"Degree {n} is not 4p² for a prime p ≥ 5."
        raise RecognitionError(e)
    H = recover_regular_group(scheme, group=group, budget=budget)
    report = RecognitionReport()
    report.add("regular", True, f"|H| = {H.order}")
    census = order_census(H)
    report.census = census
    report.involutions = census.get(2, 0)
    count, sylows = sylow_p_count(H, p)
    P = sylows[0]
    report.add(
        "sylow",
        count == 1 and P.as_table().is_abelian() and P.as_table().exponent == p,
        f"{count} Sylow {p}-subgroups",
    )
    squares = H.product[np.arange(n), np.arange(n)]
    report.add("quotient", bool(P.mask[squares].all()), "H/P has exponent 2" if P.mask[squares].all() else "")
    # basic sets read off the row of the identity
    row = scheme.colors[0]
    transpose = scheme.transpose_map()
    diagonal = int(row[0])
    symmetric = [s for s in range(scheme.rank) if transpose[s] == s and s != diagonal]
    k2 = int(sum((H.element_orders[row == s] == 2).sum() for s in symmetric))
    report.add(
        "involution-bound",
        k2 == report.involutions and k2 <= 3 * p,
        f"k2(H) = {report.involutions}, in inverse-closed basic sets {k2}, bound {3 * p}",
    )
    relations = symmetric_valency_colors(scheme, p)
    if len(relations) == 3:
        U = [H.generate_subgroup(np.flatnonzero(row == r).tolist()) for r in relations]
        report.add("U-orders", all(u.order == 2 * p for u in U), f"{[u.order for u in U]}")
        report.add(
            "U-intersections",
            all(U[i].intersection(U[j]).order == 1 for i in range(3) for j in range(i)),
        )
        report.add(
            "U-cyclic",
            all(u.is_cyclic() for u in U),
            f"{sum(u.is_dihedral() for u in U)} dihedral",
        )
    else:
        report.add("U-orders", False, f"{len(relations)} inverse-closed basic sets of size {p}")
    kind = classify_by_census(H, p)
    if kind is None:
        e = f"Element order census {census} matches no candidate group."
        raise RecognitionError(e)
    report.label = kind.value
    H.label = kind.value
    logger.info(f"Recovered H of order {H.order}: {kind.value}, k2 = {report.involutions}")
    return H, report
