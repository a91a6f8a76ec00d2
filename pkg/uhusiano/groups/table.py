"""
Finite groups as exact multiplication tables.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from uhusiano.models.groups import GroupFile
from uhusiano.models.reports import GroupReport
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)


class GroupTable:
    """
    A finite group given by its full product table on element indices `0..order-1`.

    The identity and inverse map are derived from the table, and construction fails if either is
    missing. Associativity is not assumed: `validate` checks it exhaustively.

    Parameters:
        product: Square array with `product[x, y]` the index of `xy`.
        label: Human-readable isomorphism-type tag.

    Raises:
        ValueError: if the table is not square, has out-of-range entries, or lacks an identity or inverses.
    """

    def __init__(self, product: np.ndarray | list, label: str = ""):
        table = np.array(product, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            e = f"Product table of shape {table.shape} is not a nonempty square."
            raise ValueError(e)
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            e = f"Product table entries must lie in 0..{n - 1}."
            raise ValueError(e)
        points = np.arange(n)
        candidates = np.flatnonzero((table == points).all(axis=1))
        if len(candidates) != 1 or not (table[:, candidates[0]] == points).all():
            e = "Product table has no two-sided identity."
            raise ValueError(e)
        self.identity = int(candidates[0])
        hits = table == self.identity
        if not (hits.sum(axis=1) == 1).all() or not (hits.sum(axis=0) == 1).all():
            e = "Not every element has a unique inverse."
            raise ValueError(e)
        inverse = hits.argmax(axis=1)
        if not (table[inverse, points] == self.identity).all():
            e = "Right inverses are not left inverses."
            raise ValueError(e)
        table.flags.writeable = False
        inverse.flags.writeable = False
        self.product = table
        self.inverse = inverse
        self.order = n
        self.label = label

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order}, label={self.label!r})"

    def __len__(self) -> int:
        return self.order

    ############################################################################
    # ELEMENT ARITHMETIC
    ############################################################################

    def multiply(self, x: int, y: int) -> int:
        return int(self.product[x, y])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inverse[x]), -k
        result = self.identity
        for _ in range(k % self.element_order(x)):
            result = int(self.product[result, x])
        return result

    def conjugate(self, x: int, g: int) -> int:
        """
        Return `g x g⁻¹`.
        """
        return int(self.product[self.product[g, x], self.inverse[g]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        """
        Order of every element, computed by stepping all powers in parallel.
        """
        points = np.arange(self.order)
        orders = np.zeros(self.order, dtype=np.int64)
        current = points.copy()
        k = 0
        while (orders == 0).any():
            k += 1
            fresh = (current == self.identity) & (orders == 0)
            orders[fresh] = k
            current = self.product[current, points]
        orders.flags.writeable = False
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def is_abelian(self) -> bool:
        return bool((self.product == self.product.T).all())

    ############################################################################
    # SUBGROUPS
    ############################################################################

    def generate_subgroup(self, elements: Iterable[int]) -> Subgroup:
        """
        Return the subgroup generated by a set of elements, by closing under right multiplication
        with the generators.

        Parameters:
            elements: Generating elements.

        Returns:
            Subgroup
        """
        generators = np.array(sorted(set(int(x) for x in elements)), dtype=np.int64)
        members = np.zeros(self.order, dtype=bool)
        members[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int64)
        while len(frontier) and len(generators):
            reached = np.unique(self.product[np.ix_(frontier, generators)])
            frontier = reached[~members[reached]]
            members[frontier] = True
        return Subgroup(self, tuple(int(x) for x in np.flatnonzero(members)))

    def center(self) -> Subgroup:
        commuting = (self.product == self.product.T).all(axis=1)
        return Subgroup(self, tuple(int(x) for x in np.flatnonzero(commuting)))

    def is_normal(self, subgroup: Subgroup) -> bool:
        elements = np.array(subgroup.elements)
        members = subgroup.mask
        for g in range(self.order):
            conjugates = self.product[self.product[g, elements], self.inverse[g]]
            if not members[conjugates].all():
                return False
        return True

    def direct_product(self, other: GroupTable, label: Optional[str] = None) -> GroupTable:
        """
        Return `self × other`, with the pair `(x, y)` stored at index `x * other.order + y`.
        """
        m = other.order
        left = self.product[np.repeat(np.arange(self.order), m)][:, np.repeat(np.arange(self.order), m)]
        right = np.tile(other.product, (self.order, self.order))
        return GroupTable(left * m + right, label=label if label is not None else f"{self.label}x{other.label}")

    ############################################################################
    # VALIDATION AND FILE IO
    ############################################################################

    def validate(self) -> GroupReport:
        """
        Exhaustively check associativity, the identity and inverse laws, and the Latin square property.

        Returns:
            GroupReport
        """
        report = GroupReport()
        points = np.arange(self.order)
        associative = True
        for a in range(self.order):
            # (ab)c against a(bc), over all b, c
            if not (self.product[self.product[a]] == self.product[a][self.product]).all():
                associative = False
                report.add("associativity", False, f"fails for a = {a}")
                break
        if associative:
            report.add("associativity", True, f"{self.order ** 3} triples")
        report.add(
            "identity",
            (self.product[self.identity] == points).all() and (self.product[:, self.identity] == points).all(),
            f"identity = {self.identity}",
        )
        report.add(
            "inverse",
            (self.product[points, self.inverse] == self.identity).all()
            and (self.product[self.inverse, points] == self.identity).all(),
        )
        report.add(
            "latin",
            (np.sort(self.product, axis=1) == points).all()
            and (np.sort(self.product, axis=0) == points[:, None]).all(),
        )
        return report

    def to_model(self) -> GroupFile:
        return GroupFile(
            order=self.order, label=self.label, table=self.product.ravel().tolist(), inverse=self.inverse.tolist()
        )

    def to_file(self, source: str | Path, overwrite: bool = False) -> bool:
        return _c.save_json(self.to_model().model_dump(), source, overwrite=overwrite)

    @classmethod
    def from_model(cls, model: GroupFile) -> GroupTable:
        group = cls(np.array(model.table).reshape(model.order, model.order), label=model.label)
        if group.inverse.tolist() != model.inverse:
            e = "Stored inverse array does not match the product table."
            raise ValueError(e)
        return group

    @classmethod
    def from_file(cls, source: str | Path) -> GroupTable:
        return cls.from_model(GroupFile(**_c.load_json(source)))


@dataclass(frozen=True)
class Subgroup:
    """
    A subgroup of a `GroupTable`, stored as its sorted element indices. Closure is checked on construction.
    """

    parent: GroupTable
    elements: tuple[int, ...]

    def __post_init__(self):
        elements = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", elements)
        if self.parent.identity not in elements:
            e = "Subgroup does not contain the identity."
            raise ValueError(e)
        block = np.array(elements)
        if not self.mask[self.parent.product[np.ix_(block, block)]].all():
            e = "Subgroup is not closed under the product."
            raise ValueError(e)
        if not self.mask[self.parent.inverse[block]].all():
            e = "Subgroup is not closed under inverses."
            raise ValueError(e)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def mask(self) -> np.ndarray:
        members = np.zeros(self.parent.order, dtype=bool)
        members[list(self.elements)] = True
        return members

    def __contains__(self, x: int) -> bool:
        return int(x) in self.elements

    def __len__(self) -> int:
        return self.order

    def intersection(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, tuple(sorted(set(self.elements) & set(other.elements))))

    def is_cyclic(self) -> bool:
        return bool((self.parent.element_orders[list(self.elements)] == self.order).any())

    def is_dihedral(self) -> bool:
        """
        Dihedral of order `2m` with `m ≥ 3`: a cyclic subgroup of index 2 whose complement consists of involutions.
        """
        if self.order % 2 or self.order < 6:
            return False
        orders = self.parent.element_orders[list(self.elements)]
        half = self.order // 2
        for x in np.array(self.elements)[orders == half]:
            rotations = self.parent.generate_subgroup([x])
            rest = [y for y in self.elements if y not in rotations]
            if (self.parent.element_orders[rest] == 2).all():
                return True
        return False

    def cosets(self) -> list[tuple[int, ...]]:
        """
        Right cosets `Hg`, each as a sorted tuple, ordered by least element.
        """
        seen = np.zeros(self.parent.order, dtype=bool)
        block = np.array(self.elements)
        result = []
        for g in range(self.parent.order):
            if seen[g]:
                continue
            coset = np.unique(self.parent.product[block, g])
            seen[coset] = True
            result.append(tuple(int(x) for x in coset))
        return result

    def as_table(self, label: str = "") -> GroupTable:
        """
        The subgroup as a standalone group, relabelled by position in `elements`.
        """
        block = np.array(self.elements)
        position = np.full(self.parent.order, -1, dtype=np.int64)
        position[block] = np.arange(len(block))
        return GroupTable(position[self.parent.product[np.ix_(block, block)]], label=label)


###################################################################################################
### Standard groups
###################################################################################################


def cyclic_group(n: int) -> GroupTable:
    points = np.arange(n)
    return GroupTable((points[:, None] + points[None, :]) % n, label=f"C{n}")


def dihedral_group(n: int) -> GroupTable:
    """
    Dihedral group of order `n`. The element `(k, s)` (rotation `k`, reflection bit `s`) has index `2k + s`,
    with `(k1, s1)(k2, s2) = (k1 + (-1)^s1 k2, s1 + s2)`.
    """
    if n % 2 or n < 2:
        e = f"Dihedral group order {n} must be even and positive."
        raise ValueError(e)
    m = n // 2
    k, s = np.divmod(np.arange(n), 2)
    rotation = (k[:, None] + np.where(s[:, None] == 1, -1, 1) * k[None, :]) % m
    reflection = (s[:, None] + s[None, :]) % 2
    return GroupTable(2 * rotation + reflection, label=f"D{n}")


def elementary_abelian_group(q: int, k: int) -> GroupTable:
    """
    `C_q^k` with mixed-radix indices, first coordinate most significant.
    """
    group = cyclic_group(q)
    for _ in range(k - 1):
        group = group.direct_product(cyclic_group(q))
    group.label = "x".join([f"C{q}"] * k)
    return group
