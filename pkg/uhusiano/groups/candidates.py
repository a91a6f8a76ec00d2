"""
The four groups of order 4p² with a normal Sylow p-subgroup `C_p × C_p` and quotient `C_2 × C_2`, and
the invariants used to tell them apart.
"""

import logging
from collections import Counter

import numpy as np
from sympy import divisors, factorint, isprime

from uhusiano.models.groups import CandidateKind
from uhusiano.groups.table import GroupTable, Subgroup, cyclic_group, dihedral_group

logger = logging.getLogger(__name__)


def _inverting_group(p: int) -> GroupTable:
    # (v, ε)(w, δ) = (v + (-1)^ε w, ε + δ) on Z_p² ⋊ C_2, index (v1 * p + v2) * 2 + ε
    n = 2 * p * p
    v, eps = np.divmod(np.arange(n), 2)
    v1, v2 = np.divmod(v, p)
    sign = np.where(eps[:, None] == 1, -1, 1)
    w1 = (v1[:, None] + sign * v1[None, :]) % p
    w2 = (v2[:, None] + sign * v2[None, :]) % p
    delta = (eps[:, None] + eps[None, :]) % 2
    return GroupTable((w1 * p + w2) * 2 + delta, label=f"C{p}^2:C2")


def build_candidate_group(kind: CandidateKind | str, p: int) -> GroupTable:
    """
    Build one of the four candidate groups of order 4p².

    Parameters:
        kind: Candidate isomorphism type.
        p: Prime ≥ 5.

    Raises:
        ValueError: for an unknown kind or an invalid prime.

    Returns:
        GroupTable
    """
    kind = CandidateKind(kind)
    if not isprime(p) or p < 5:
        e = f"p = {p} must be a prime ≥ 5."
        raise ValueError(e)
    match kind:
        case CandidateKind.cyclic_cyclic:
            group = cyclic_group(2 * p).direct_product(cyclic_group(2 * p))
        case CandidateKind.cyclic_dihedral:
            group = cyclic_group(2 * p).direct_product(dihedral_group(2 * p))
        case CandidateKind.dihedral_dihedral:
            group = dihedral_group(2 * p).direct_product(dihedral_group(2 * p))
        case CandidateKind.inverting:
            group = _inverting_group(p).direct_product(cyclic_group(2))
    group.label = kind.value
    logger.debug(f"Built candidate {kind.value} of order {group.order}")
    return group


def order_census(group: GroupTable) -> dict[int, int]:
    """
    Number of elements of each order `m`, for every divisor `m` of the exponent (zero counts included).
    """
    counts = Counter(int(x) for x in group.element_orders)
    return {m: counts.get(m, 0) for m in divisors(group.exponent)}


def _normalizes(group: GroupTable, x: int, subgroup: Subgroup) -> bool:
    block = np.array(subgroup.elements)
    conjugates = group.product[group.product[x, block], group.inverse[x]]
    return bool(subgroup.mask[conjugates].all())


def sylow_p_count(group: GroupTable, p: int) -> tuple[int, list[Subgroup]]:
    """
    Find every Sylow p-subgroup. One is grown from the trivial subgroup by repeatedly adjoining an element of
    its normalizer whose p-th power falls back inside; the rest are its conjugates.

    Parameters:
        group: Any finite group.
        p: Prime dividing the group order.

    Raises:
        ValueError: if `p` does not divide the order.

    Returns:
        The count and the subgroups, ordered by element tuple.
    """
    target = p ** factorint(group.order).get(p, 0)
    if target == 1:
        e = f"p = {p} does not divide the group order {group.order}."
        raise ValueError(e)
    sylow = group.generate_subgroup([])
    while sylow.order < target:
        for x in range(group.order):
            if x in sylow or not _normalizes(group, x, sylow):
                continue
            if group.power(x, p) in sylow:
                sylow = group.generate_subgroup(list(sylow.elements) + [x])
                break
        else:
            e = f"Could not extend a {p}-subgroup of order {sylow.order}."
            raise RuntimeError(e)
    block = np.array(sylow.elements)
    found = {}
    for g in range(group.order):
        conjugate = tuple(int(x) for x in np.sort(group.product[group.product[g, block], group.inverse[g]]))
        if conjugate not in found:
            found[conjugate] = Subgroup(group, conjugate)
    subgroups = [found[k] for k in sorted(found)]
    logger.debug(f"{group.label}: {len(subgroups)} Sylow {p}-subgroups of order {target}")
    return len(subgroups), subgroups


def classify_by_census(group: GroupTable, p: int) -> CandidateKind | None:
    """
    Match a group of order 4p² to a candidate by its element-order census. The four censuses are pairwise
    distinct, so a match determines the type within this family.
    """
    if group.order != 4 * p * p:
        return None
    census = order_census(group)
    for kind in CandidateKind:
        if order_census(build_candidate_group(kind, p)) == census:
            return kind
    return None
