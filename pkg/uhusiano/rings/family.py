"""
The basic partition `𝒮` of `G = A × P` and its fusions, with checks of their ring properties and of their
tensor and wreath decompositions.
"""

import logging

import numpy as np

from uhusiano.models.config import FusionLevel
from uhusiano.models.reports import Report, StructureReport, ProductFactor
from uhusiano.groups.bundle import PaperGroupBundle
from uhusiano.groups.table import Subgroup
from uhusiano.rings.partition import (
    BasicSetPartition,
    StructureConstants,
    is_partition_fusion,
    set_radical,
    structure_constants,
)

logger = logging.getLogger(__name__)


def _translates(bundle: PaperGroupBundle, elements: tuple[int, ...]) -> list[tuple[int, ...]]:
    # Distinct sets Xg for g ∈ P
    group = bundle.group
    block = np.array(elements)
    found = {tuple(sorted(int(x) for x in group.product[block, g])) for g in bundle.P.elements}
    return sorted(found)


def paper_partition(bundle: PaperGroupBundle) -> BasicSetPartition:
    """
    The basic partition `{{g}, X_i g : g ∈ P, i ∈ I}`, with `p² + 3p` sets.
    """
    sets = [(g,) for g in bundle.P.elements]
    for Xi in bundle.X:
        sets.extend(_translates(bundle, Xi))
    partition = BasicSetPartition(bundle.group, sets)
    logger.debug(f"Basic partition for p = {bundle.p} has {partition.rank} sets")
    return partition


def fusion_partition(bundle: PaperGroupBundle, level: FusionLevel | str) -> BasicSetPartition:
    """
    A fusion of the basic partition: every `X_i` named by `level` merges into its coset `Y_i`, and `0`
    merges all three.

    Raises:
        ValueError: for an unknown level.
    """
    level = FusionLevel(level)
    sets = [(g,) for g in bundle.P.elements]
    for i in level.kept:
        sets.extend(_translates(bundle, bundle.X[i]))
    for i in level.merged:
        sets.append(bundle.Y[i])
    return BasicSetPartition(bundle.group, sets)


def _set_kind(bundle: PaperGroupBundle, partition: BasicSetPartition) -> list[int]:
    # 0 for sets inside P, i + 1 for sets inside Y_{i+1}, -1 for sets spread over several cosets
    kinds = []
    for s in partition.sets:
        cosets = {bundle.coset_index(x) for x in s}
        kinds.append(cosets.pop() if len(cosets) == 1 else -1)
    return kinds


def verify_A_properties(
    partition: BasicSetPartition, bundle: PaperGroupBundle, constants: StructureConstants | None = None
) -> Report:
    """
    Check the ring properties of the basic partition exhaustively.

    - Thin radical: the singleton basic sets are exactly the elements of `P`, and every basic set lies in a
      single `P`-coset, so the quotient over `P` is the group ring of `C_2 × C_2`.
    - Each `X_i` is an inverse-closed basic set with `|X_i| = |rad(X_i)| = p`, `rad(X_i) = P_i`, and the
      `P_i` meet pairwise trivially.
    - For `T_i = X_i g_i` and `T_j = X_j g_j` with `i ≠ j`, `c_{T_i T_j}^T > 0` exactly when `T` is a
      translate of `X_k`, `k` the third index, and then the constant is 1.

    Parameters:
        partition: The basic partition.
        bundle: The base group and its distinguished sets.
        constants: Precomputed structure constants, if available.

    Returns:
        Report
    """
    report = Report()
    group, p = bundle.group, bundle.p
    thin = sorted(s[0] for s in partition.sets if len(s) == 1)
    report.add("thin-radical", thin == list(bundle.P.elements), f"{len(thin)} singleton sets")
    kinds = _set_kind(bundle, partition)
    report.add("quotient", -1 not in kinds, "each basic set lies in one P-coset")
    quotient = group.generate_subgroup(bundle.a)
    report.add(
        "quotient-group",
        quotient.order == 4 and quotient == bundle.A and bundle.A.as_table().exponent == 2,
        "G/P ≅ C2 x C2",
    )
    for i, (Xi, Pi) in enumerate(zip(bundle.X, bundle.Psub)):
        name = f"X{i + 1}"
        in_partition = Xi in partition.sets
        inverse_closed = tuple(sorted(int(x) for x in group.inverse[list(Xi)])) == Xi
        radical = set_radical(group, Xi)
        report.add(f"{name}-basic", in_partition)
        report.add(f"{name}-symmetric", inverse_closed)
        report.add(f"{name}-size", len(Xi) == p == radical.order, f"|X| = {len(Xi)}, |rad X| = {radical.order}")
        report.add(f"{name}-radical", radical == Pi and set(Pi.elements) <= set(bundle.P.elements) and Pi.is_cyclic())
    for i in range(3):
        for j in range(i):
            meet = bundle.Psub[i].intersection(bundle.Psub[j])
            report.add(f"P{j + 1}-P{i + 1}-trivial", meet.order == 1)
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            products = np.unique(group.product[np.ix_(list(bundle.X[i]), list(bundle.X[j]))])
            report.add(
                f"X{i + 1}X{j + 1}-in-Pa{k + 1}",
                set(int(x) for x in products) <= set(bundle.Y[k]),
            )
    if constants is None:
        constants = structure_constants(partition)
    bad, checked = [], 0
    eligible = [t for t, kind in enumerate(kinds) if kind > 0]
    for t1 in eligible:
        for t2 in eligible:
            i, j = kinds[t1], kinds[t2]
            if i == j:
                continue
            k = 6 - i - j
            for t in range(partition.rank):
                checked += 1
                c = constants[(t1, t2, t)]
                expected = 1 if kinds[t] == k else 0
                if c != expected:
                    bad.append((t1, t2, t, c))
    report.add(
        "positivity",
        not bad,
        f"{checked} triples checked" if not bad else f"{len(bad)} mismatches, first {bad[0]}",
    )
    return report


###################################################################################################
### Tensor and wreath decompositions
###################################################################################################


def _restriction(partition: BasicSetPartition, subgroup: Subgroup) -> list[tuple[int, ...]] | None:
    members = set(subgroup.elements)
    inside = [s for s in partition.sets if set(s) <= members]
    if sum(len(s) for s in inside) != subgroup.order:
        return None
    return inside


def _wreath_factor(partition: BasicSetPartition, U: Subgroup, B: Subgroup) -> ProductFactor | None:
    """
    The restriction to `U` as a wreath product over `B`: sets inside `B` cover `B` and every other set
    is a union of `B`-cosets.
    """
    sets = _restriction(partition, U)
    base = _restriction(partition, B)
    if sets is None or base is None:
        return None
    group = partition.group
    block = np.array(B.elements)
    tops = set()
    for s in sets:
        if set(s) <= set(B.elements):
            continue
        union = {int(y) for x in s for y in group.product[block, x]}
        if union != set(s):
            return None
        tops.add(tuple(sorted(union)))
    return ProductFactor(
        kind="wreath", order=U.order, base_order=B.order, base_rank=len(base), top_rank=len(tops) + 1
    )


def _is_tensor(partition: BasicSetPartition, U: Subgroup, V: Subgroup) -> bool:
    group = partition.group
    if U.order * V.order != group.order or U.intersection(V).order != 1:
        return False
    left, right = _restriction(partition, U), _restriction(partition, V)
    if left is None or right is None:
        return False
    products = [
        tuple(sorted(int(z) for z in group.product[np.ix_(list(s), list(t))].ravel())) for s in left for t in right
    ]
    return sorted(products, key=lambda s: (len(s), s[:1])) == list(partition.sets)


def recognize_products(partition: BasicSetPartition, bundle: PaperGroupBundle) -> StructureReport:
    """
    Recognize the tensor or wreath structure of a fusion of the basic partition.

    - Single-index fusions `𝒮_i` are the tensor product of their restrictions to `U_j = ⟨X_j⟩` and
      `U_k = ⟨X_k⟩`, each a wreath product over `P_j` (resp. `P_k`) with a rank-2 top.
    - The coarsest fusion `𝒮_0` is a wreath product over `P`, with `c_{Y_i Y_j}^{Y_k} = p²`.
    - Two-index fusions are checked to lie below both single-index fusions containing them.

    Returns:
        StructureReport; a partition of unexpected shape gives failing checks.
    """
    report = StructureReport()
    group, p = bundle.group, bundle.p
    level = None
    for candidate in FusionLevel:
        if fusion_partition(bundle, candidate) == partition:
            level = candidate
            break
    if level is None:
        report.add("fusion-level", False, "not a fusion of the basic partition")
        return report
    report.add("fusion-level", True, level.value)
    if len(level.merged) == 1:
        j, k = level.kept
        U = group.generate_subgroup(bundle.X[j])
        V = group.generate_subgroup(bundle.X[k])
        report.kind = "tensor"
        report.add("U-orders", U.order == V.order == 2 * p, f"|U{j + 1}| = {U.order}, |U{k + 1}| = {V.order}")
        report.add("tensor", _is_tensor(partition, U, V))
        for W, i in ((U, j), (V, k)):
            factor = _wreath_factor(partition, W, bundle.Psub[i])
            report.add(
                f"U{i + 1}-wreath",
                factor is not None and factor.base_rank == p and factor.top_rank == 2,
                f"{factor.base_rank} x {factor.top_rank}" if factor else "not a wreath product",
            )
            if factor:
                report.factors.append(factor)
    elif len(level.merged) == 3:
        report.kind = "wreath"
        factor = _wreath_factor(partition, Subgroup(group, tuple(range(group.order))), bundle.P)
        report.add(
            "wreath",
            factor is not None and factor.base_rank == p * p and factor.top_rank == 4,
            f"{factor.base_rank} x {factor.top_rank}" if factor else "not a wreath product",
        )
        if factor:
            report.factors.append(factor)
        constants = structure_constants(partition)
        Y = [partition.index(Yi) for Yi in bundle.Y]
        for i in range(3):
            for j in range(3):
                if i != j:
                    c = constants[(Y[i], Y[j], Y[3 - i - j])]
                    report.add(f"Y{i + 1}Y{j + 1}", c == p * p, f"c = {c}")
    else:
        report.kind = "fusion"
        for i in level.merged:
            single = fusion_partition(bundle, FusionLevel(str(i + 1)))
            report.add(f"below-S{i + 1}", is_partition_fusion(partition, single))
    return report
