"""
Permutation groups given by generators, backed by `sympy.combinatorics.PermutationGroup` for
Schreier–Sims, with an explicit stabilizer chain on a greedily chosen base.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
from sympy.combinatorics import PermutationGroup, Permutation as SympyPermutation

from uhusiano.models.perms import PermGroupFile, Regularity
from uhusiano.models.reports import Report
from uhusiano.groups.table import GroupTable
from uhusiano.perms.permutation import Permutation, SearchBudgetExceeded
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10**4


@dataclass(frozen=True)
class StabilizerChain:
    """
    Base points `β_1..β_m` and, for each level `k`, the transversal of the orbit of `β_k` under the pointwise
    stabilizer of `β_1..β_{k-1}`, as `{point: element mapping β_k to point}`.
    """

    base: tuple[int, ...]
    transversals: tuple[dict[int, SympyPermutation], ...]

    @property
    def order(self) -> int:
        result = 1
        for transversal in self.transversals:
            result *= len(transversal)
        return result

    def sift_images(self, images: list[int]) -> bool:
        """
        Whether some group element maps `β_1..β_k` to `images`, for a prefix of length `k`.
        """
        targets = list(images)
        for k in range(len(targets)):
            transversal = self.transversals[k]
            if targets[k] not in transversal:
                return False
            back = ~transversal[targets[k]]
            targets = [back(x) for x in targets]
        return True


class PermGroup:
    """
    A permutation group on `0..degree-1`.

    Parameters:
        degree: Number of points.
        generators: Generators as image arrays or `Permutation`s. May be empty.

    Raises:
        ValueError: if a generator has the wrong degree.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation | np.ndarray | list] = ()):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        for g in gens:
            if g.degree != degree:
                e = f"Generator of degree {g.degree} in a group of degree {degree}."
                raise ValueError(e)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        sympy_gens = [g.to_sympy() for g in gens] or [SympyPermutation(list(range(degree)))]
        self._group = PermutationGroup(sympy_gens)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    @classmethod
    def from_sympy(cls, group: PermutationGroup, degree: int) -> PermGroup:
        return cls(degree, [Permutation.from_sympy(g, degree) for g in group.generators])

    @property
    def sympy(self) -> PermutationGroup:
        return self._group

    ############################################################################
    # STABILIZER CHAIN AND ORDER
    ############################################################################

    @cached_property
    def chain(self) -> StabilizerChain:
        """
        Stabilizer chain on a base chosen greedily: at each level, the least point of a largest orbit of the
        current pointwise stabilizer.
        """
        base: list[int] = []
        transversals = []
        current = self._group
        while not current.is_trivial:
            orbits = sorted((sorted(o) for o in current.orbits()), key=lambda o: (-len(o), o[0]))
            point = orbits[0][0]
            transversals.append(dict(current.orbit_transversal(point, pairs=True)))
            base.append(point)
            current = self._group.pointwise_stabilizer(base)
        chain = StabilizerChain(base=tuple(base), transversals=tuple(transversals))
        logger.debug(f"Stabilizer chain with base length {len(base)} and order {chain.order}")
        return chain

    def chain_on(self, prefix: Iterable[int]) -> StabilizerChain:
        """
        Transversals along a prescribed base prefix (orbits may be trivial).
        """
        base = list(prefix)
        transversals = []
        for k, point in enumerate(base):
            level = self._group.pointwise_stabilizer(base[:k]) if k else self._group
            transversals.append(dict(level.orbit_transversal(point, pairs=True)))
        return StabilizerChain(base=tuple(base), transversals=tuple(transversals))

    @cached_property
    def order(self) -> int:
        """
        Exact order, as the product of the transversal sizes, checked against sympy's own Schreier–Sims.
        """
        order = self.chain.order
        if order != int(self._group.order()):
            e = f"Stabilizer chain order {order} disagrees with Schreier–Sims order {self._group.order()}."
            raise RuntimeError(e)
        return order

    ############################################################################
    # MEMBERSHIP, ELEMENTS, ORBITS
    ############################################################################

    def contains(self, perm: Permutation | SympyPermutation | np.ndarray) -> bool:
        if isinstance(perm, SympyPermutation):
            perm = Permutation.from_sympy(perm, self.degree)
        elif not isinstance(perm, Permutation):
            perm = Permutation(perm)
        return bool(self._group.contains(perm.to_sympy()))

    def elements(self, limit: int = ENUMERATION_LIMIT) -> list[Permutation]:
        """
        All elements, sorted by image array. Listed by Dimino's closure, independently of the stabilizer chain.

        Raises:
            ValueError: if the order exceeds `limit`.
        """
        if self.order > limit:
            e = f"Refusing to enumerate {self.order} elements (limit {limit})."
            raise ValueError(e)
        generated = self._group.generate(method="dimino")
        found = sorted({tuple(Permutation.from_sympy(g, self.degree).image.tolist()) for g in generated})
        return [Permutation(image) for image in found]

    def orbits(self) -> list[list[int]]:
        found = [sorted(o) for o in self._group.orbits()]
        covered = {x for o in found for x in o}
        found.extend([x] for x in range(self.degree) if x not in covered)
        return sorted(found, key=lambda o: o[0])

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def point_stabilizer_orders(self) -> list[int]:
        return [int(self._group.pointwise_stabilizer([x]).order()) for x in range(self.degree)]

    def is_semiregular(self) -> bool:
        return all(order == 1 for order in self.point_stabilizer_orders())

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    ############################################################################
    # FILE IO
    ############################################################################

    def to_model(self) -> PermGroupFile:
        return PermGroupFile(
            degree=self.degree, order=str(self.order), generators=[g.image.tolist() for g in self.generators]
        )

    def to_file(self, source: str | Path, overwrite: bool = False) -> bool:
        return _c.save_json(self.to_model().model_dump(), source, overwrite=overwrite)

    @classmethod
    def from_model(cls, model: PermGroupFile) -> PermGroup:
        group = cls(model.degree, model.generators)
        if str(group.order) != model.order:
            e = f"Stored order {model.order} does not match the generated order {group.order}."
            raise ValueError(e)
        return group

    @classmethod
    def from_file(cls, source: str | Path) -> PermGroup:
        return cls.from_model(PermGroupFile(**_c.load_json(source)))


###################################################################################################
### Standard groups and classification
###################################################################################################


def right_translation_group(group: GroupTable) -> PermGroup:
    """
    The right regular action `h ↦ hx`, generated by a small generating set picked greedily.
    """
    members = group.generate_subgroup([])
    generators = []
    for x in range(group.order):
        if members.order == group.order:
            break
        if x not in members:
            generators.append(x)
            members = group.generate_subgroup(generators)
    return PermGroup(group.order, [group.product[:, x] for x in generators])


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1)
    cycle = np.roll(np.arange(n), -1)
    swap = np.arange(n)
    swap[[0, 1]] = [1, 0]
    return PermGroup(n, [cycle, swap] if n > 2 else [swap])


def regularity_class(group: PermGroup) -> Regularity:
    semiregular = group.is_semiregular()
    transitive = group.is_transitive()
    if semiregular and transitive:
        return Regularity.regular
    if semiregular:
        return Regularity.semiregular_intransitive
    if transitive:
        return Regularity.transitive_nonregular
    return Regularity.other


def group_intersection(a: PermGroup, b: PermGroup, budget: Optional[int] = None) -> PermGroup:
    """
    The intersection of two permutation groups on the same points.

    When either order is at most `ENUMERATION_LIMIT`, the smaller group is enumerated and filtered by
    membership in the other. Otherwise the elements of `a` are walked through its stabilizer chain as
    products `u_m ⋯ u_1` of transversal elements, and a partial product survives only while some element
    of `b` maps the base prefix the same way.

    Raises:
        ValueError: if the degrees differ.

    Returns:
        PermGroup
    """
    if a.degree != b.degree:
        e = f"Groups of degrees {a.degree} and {b.degree}."
        raise ValueError(e)
    if min(a.order, b.order) <= ENUMERATION_LIMIT:
        small, large = (a, b) if a.order <= b.order else (b, a)
        found = PermGroup(a.degree)
        for g in small.elements():
            if large.contains(g) and not found.contains(g):
                found = PermGroup(a.degree, found.generators + (g,))
        logger.info(f"Intersection by enumeration: order {found.order}")
        return found
    chain = a.chain
    guide = b.chain_on(chain.base)
    m = len(chain.base)
    found = PermGroup(a.degree)
    visited = 0

    def _walk(k: int, suffix: SympyPermutation):
        nonlocal found, visited
        visited += 1
        if budget is not None and visited > budget:
            e = f"Intersection search exceeded {budget} nodes."
            raise SearchBudgetExceeded(e)
        if k == m:
            if b.sympy.contains(suffix) and not found.sympy.contains(suffix):
                found = PermGroup(a.degree, found.generators + (Permutation.from_sympy(suffix, a.degree),))
            return
        for point in sorted(chain.transversals[k]):
            product = chain.transversals[k][point] * suffix
            if guide.sift_images([product(beta) for beta in chain.base[: k + 1]]):
                _walk(k + 1, product)

    _walk(0, SympyPermutation(list(range(a.degree))))
    logger.info(f"Intersection by backtracking: order {found.order}, {visited} nodes")
    return found


def lemma_chain_inequalities(orders: dict[str, int], p: int) -> Report:
    """
    Check the counting chain that forces a regular automorphism group:
    `|Aut 12| |Aut 13| ≤ |Aut 1| |Aut 0| = 16p¹²` and `|Aut| ≥ |Aut 1| |Aut 2| / |Aut 12| ≥ 4p²`.

    Parameters:
        orders: Automorphism group orders keyed by fusion level, with `""` for the scheme itself.
        p: The prime.
    """
    report = Report()
    report.add(
        "product-bound",
        orders["12"] * orders["13"] <= orders["1"] * orders["0"] == 16 * p**12,
        f"{orders['12']} * {orders['13']} <= {orders['1']} * {orders['0']}",
    )
    quotient = orders["1"] * orders["2"] // orders["12"]
    report.add(
        "lower-bound",
        orders[""] * orders["12"] >= orders["1"] * orders["2"] and quotient >= 4 * p * p,
        f"{orders['']} >= {quotient} >= {4 * p * p}",
    )
    return report
