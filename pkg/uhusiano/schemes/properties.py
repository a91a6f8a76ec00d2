"""
Structural properties of the degree-4p² association schemes: commutativity, the thin radical and its
quotient, the symmetric relations of valency p and their radicals, and the product pattern of their cosets.
"""

import logging
from math import isqrt
from typing import Optional

import numpy as np

from uhusiano.models.reports import Report
from uhusiano.schemes.scheme import Scheme
from uhusiano.schemes.tensor import IntersectionTensor, intersection_tensor
from uhusiano.schemes.parabolic import (
    NotParabolicError,
    ThinRadical,
    compose_with_thin,
    quotient_scheme,
    radical_of_color,
    thin_radical,
)

logger = logging.getLogger(__name__)


def symmetric_valency_colors(scheme: Scheme, valency: int) -> list[int]:
    """
    Symmetric, non-diagonal colours of a given valency greater than one.
    """
    transpose = scheme.transpose_map()
    valencies = scheme.valencies()
    diagonal = set(scheme.diagonal_colors())
    return [
        s
        for s in range(scheme.rank)
        if transpose[s] == s and s not in diagonal and valencies[s] == valency and valency > 1
    ]


def verify_B_properties(
    scheme: Scheme, tensor: Optional[IntersectionTensor] = None, radical: Optional[ThinRadical] = None
) -> Report:
    """
    Check the structure of an association scheme of degree `4p²`. Failures are recorded, never raised.

    - The scheme is commutative.
    - The thin radical is `C_p × C_p`, and the quotient by its union `e` is regular of degree 4 with
      every element of order at most 2.
    - There are exactly three symmetric relations `r_i` of valency `p`; each `e_i = rad(r_i)` has classes
      of size `p` and colours forming a cyclic group of order `p`, and the `e_i` meet pairwise in the diagonal.
    - For `t_i = r_i u_i` and `t_j = r_j u_j` with `i ≠ j` and thin `u_i, u_j`, `c_{t_i t_j}^t > 0` exactly
      when `t = r_k u_k` for the third index `k`.

    Parameters:
        scheme: An association scheme.
        tensor: Precomputed intersection numbers.
        radical: Precomputed thin radical.

    Returns:
        Report
    """
    report = Report()
    n = scheme.degree
    p = isqrt(n // 4)
    if 4 * p * p != n or not scheme.is_association_scheme():
        report.add("degree", False, f"degree {n} is not 4p² for an association scheme")
        return report
    if tensor is None:
        tensor = intersection_tensor(scheme)
    if radical is None:
        radical = thin_radical(scheme)
    report.add("commutative", tensor.is_commutative())
    # thin radical and quotient
    E = radical.group
    report.add(
        "thin-radical",
        E.order == p * p and E.is_abelian() and E.exponent == p,
        f"|E| = {E.order}, exponent {E.exponent}",
    )
    try:
        quotient = quotient_scheme(scheme, radical.parabolic)
        top = thin_radical(quotient)
        report.add(
            "quotient",
            quotient.degree == 4 and quotient.rank == 4 and top.group.order == 4 and top.group.exponent <= 2,
            f"degree {quotient.degree}, rank {quotient.rank}",
        )
    except (NotParabolicError, ValueError) as err:
        report.add("quotient", False, str(err))
    # symmetric relations of valency p and their radicals
    relations = symmetric_valency_colors(scheme, p)
    report.add("r-count", len(relations) == 3, f"{len(relations)} symmetric relations of valency {p}")
    if len(relations) != 3:
        return report
    position = {c: i for i, c in enumerate(radical.colors)}
    radicals = []
    for i, r in enumerate(relations):
        e_i = radical_of_color(scheme, r, radical)
        inside = set(e_i.colors) <= set(radical.colors)
        cyclic = False
        if inside and len(e_i.colors) == p:
            sub = E.generate_subgroup([position[c] for c in e_i.colors])
            cyclic = sub.order == p and sub.is_cyclic()
        sizes = set(e_i.class_sizes())
        report.add(
            f"r{i + 1}-radical",
            inside and cyclic and sizes == {p},
            f"|E_{i + 1}| = {len(e_i.colors)}, class sizes {sorted(sizes)}",
        )
        radicals.append(set(e_i.colors))
    diagonal = set(scheme.diagonal_colors())
    for i in range(3):
        for j in range(i):
            report.add(f"e{j + 1}-e{i + 1}-trivial", radicals[i] & radicals[j] == diagonal)
    # coset colours r_i u and the product pattern
    cosets = [sorted({compose_with_thin(scheme, r, u) for u in radical.colors}) for r in relations]
    kind = np.full(scheme.rank, -1, dtype=np.int64)
    for i, colors in enumerate(cosets):
        kind[colors] = i
    bad, checked = [], 0
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            for ti in cosets[i]:
                for tj in cosets[j]:
                    for t in range(scheme.rank):
                        checked += 1
                        if (tensor[(ti, tj, t)] > 0) != (kind[t] == k):
                            bad.append((ti, tj, t))
    report.add(
        "positivity",
        not bad,
        f"{checked} triples checked" if not bad else f"{len(bad)} mismatches, first {bad[0]}",
    )
    return report
