"""
Partitions of a group into basic sets, their structure constants and the Schur partition axioms.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from uhusiano.models.reports import SchurReport
from uhusiano.models.schemes import PartitionFile, ConstantsFile
from uhusiano.groups.table import GroupTable, Subgroup
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)

Triple = tuple[int, int, int]


class BasicSetPartition:
    """
    A partition of a group's elements, with the sets in canonical order: by size, then by least element.

    Parameters:
        group: The underlying group.
        sets: Disjoint nonempty element sets covering the group, in any order.

    Raises:
        ValueError: if the sets are not a partition of the group.
    """

    def __init__(self, group: GroupTable, sets: Iterable[Iterable[int]]):
        canonical = sorted((tuple(sorted(set(int(x) for x in s))) for s in sets), key=lambda s: (len(s), s[:1]))
        owner = np.full(group.order, -1, dtype=np.int64)
        for i, s in enumerate(canonical):
            if not s:
                e = "Basic sets must be nonempty."
                raise ValueError(e)
            if min(s) < 0 or max(s) >= group.order:
                e = f"Basic set {s} has elements outside the group."
                raise ValueError(e)
            if (owner[list(s)] != -1).any():
                e = f"Basic set {s} overlaps an earlier set."
                raise ValueError(e)
            owner[list(s)] = i
        if (owner == -1).any():
            e = f"Elements {np.flatnonzero(owner == -1).tolist()[:5]} are not covered."
            raise ValueError(e)
        owner.flags.writeable = False
        self.group = group
        self.sets: tuple[tuple[int, ...], ...] = tuple(canonical)
        self.owner = owner

    def __repr__(self) -> str:
        return f"BasicSetPartition(group={self.group.label!r}, rank={self.rank})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasicSetPartition):
            return NotImplemented
        return self.group is other.group and self.sets == other.sets

    def __hash__(self) -> int:
        return hash((id(self.group), self.sets))

    def __len__(self) -> int:
        return self.rank

    @property
    def rank(self) -> int:
        return len(self.sets)

    def index(self, elements: Iterable[int]) -> int:
        """
        Position of a basic set, given its elements in any order.

        Raises:
            ValueError: if the elements are not exactly one basic set.
        """
        target = tuple(sorted(int(x) for x in elements))
        i = int(self.owner[target[0]]) if target else -1
        if i < 0 or self.sets[i] != target:
            e = f"{target} is not a basic set."
            raise ValueError(e)
        return i

    def inverse_map(self) -> Optional[list[int]]:
        """
        Position of `X⁻¹` for every basic set `X`, or `None` if the partition is not inverse-closed.
        """
        result = []
        for s in self.sets:
            inverse = tuple(sorted(int(x) for x in self.group.inverse[list(s)]))
            i = int(self.owner[inverse[0]])
            if self.sets[i] != inverse:
                return None
            result.append(i)
        return result

    def to_model(self, group_ref: str = _c.DEFAULT_GROUP) -> PartitionFile:
        return PartitionFile(group_ref=group_ref, sets=[list(s) for s in self.sets])

    def to_file(self, source: str | Path, group_ref: str = _c.DEFAULT_GROUP, overwrite: bool = False) -> bool:
        return _c.save_json(self.to_model(group_ref).model_dump(), source, overwrite=overwrite)

    @classmethod
    def from_file(cls, source: str | Path, group: GroupTable) -> BasicSetPartition:
        return cls(group, PartitionFile(**_c.load_json(source)).sets)


class StructureConstants:
    """
    Sparse exact structure constants `c_{XY}^Z`, the number of `(x, y) ∈ X × Y` with `xy = z` for any
    fixed `z ∈ Z`.
    """

    def __init__(self, partition: BasicSetPartition, entries: dict[Triple, int]):
        self.partition = partition
        self.entries = entries

    def __getitem__(self, key: Triple) -> int:
        return self.entries.get(key, 0)

    def __len__(self) -> int:
        return len(self.entries)

    def check_sums(self) -> bool:
        """
        `Σ_Z c_{XY}^Z |Z| = |X||Y|` for every pair of basic sets.
        """
        sizes = [len(s) for s in self.partition.sets]
        totals: dict[tuple[int, int], int] = {}
        for (x, y, z), c in self.entries.items():
            totals[(x, y)] = totals.get((x, y), 0) + c * sizes[z]
        r = self.partition.rank
        return all(totals.get((x, y), 0) == sizes[x] * sizes[y] for x in range(r) for y in range(r))

    def to_model(self, partition_ref: str = _c.DEFAULT_PARTITION) -> ConstantsFile:
        return ConstantsFile(
            partition_ref=partition_ref, entries=[(x, y, z, c) for (x, y, z), c in sorted(self.entries.items())]
        )

    def to_file(self, source: str | Path, partition_ref: str = _c.DEFAULT_PARTITION, overwrite: bool = False) -> bool:
        return _c.save_json(self.to_model(partition_ref).model_dump(), source, overwrite=overwrite)


def _count_products(partition: BasicSetPartition) -> tuple[dict[Triple, int], list[Triple]]:
    # Per X, count (owner(y), xy) over x ∈ X and all y, then test constancy along each Z block.
    group = partition.group
    n, r = group.order, partition.rank
    order = np.argsort(partition.owner, kind="stable")
    starts = np.searchsorted(partition.owner[order], np.arange(r))
    entries: dict[Triple, int] = {}
    violations: list[Triple] = []
    for x, X in enumerate(partition.sets):
        keys = partition.owner[None, :] * n + group.product[list(X)]
        counts = np.bincount(keys.ravel(), minlength=r * n).reshape(r, n)[:, order]
        lo = np.minimum.reduceat(counts, starts, axis=1)
        hi = np.maximum.reduceat(counts, starts, axis=1)
        for y, z in zip(*np.nonzero(lo != hi)):
            violations.append((x, int(y), int(z)))
        for y, z in zip(*np.nonzero((lo == hi) & (hi > 0))):
            entries[(x, int(y), int(z))] = int(hi[y, z])
    return entries, violations


def structure_constants(partition: BasicSetPartition) -> StructureConstants:
    """
    Compute the structure constants of a Schur partition.

    Raises:
        ValueError: if some product count is not constant on a basic set.
    """
    entries, violations = _count_products(partition)
    if violations:
        x, y, z = violations[0]
        e = f"Product count of sets {x}, {y} is not constant on set {z}."
        raise ValueError(e)
    return StructureConstants(partition, entries)


def validate_schur(partition: BasicSetPartition) -> SchurReport:
    """
    Check the Schur partition axioms. Failures are recorded, never raised.

    Returns:
        SchurReport, with `commutative` set when every constant is symmetric in its inputs.
    """
    report = SchurReport()
    group = partition.group
    report.add("identity", partition.sets[int(partition.owner[group.identity])] == (group.identity,))
    report.add("inverse", partition.inverse_map() is not None)
    entries, violations = _count_products(partition)
    detail = f"{len(entries)} nonzero constants"
    if violations:
        detail = f"{len(violations)} non-constant counts, first {violations[0]}"
    report.add("product", not violations, detail)
    if not violations:
        constants = StructureConstants(partition, entries)
        report.add("sums", constants.check_sums())
        asymmetric = [k for k, c in entries.items() if entries.get((k[1], k[0], k[2]), 0) != c]
        report.commutative = not asymmetric
        report.add("commutative", report.commutative, f"first asymmetric {asymmetric[0]}" if asymmetric else "")
    logger.debug(f"Schur validation of {partition!r}: {report.passed}")
    return report


###################################################################################################
### Partition algebra
###################################################################################################


def singleton_partition(group: GroupTable) -> BasicSetPartition:
    return BasicSetPartition(group, [[x] for x in range(group.order)])


def trivial_partition(group: GroupTable) -> BasicSetPartition:
    rest = [x for x in range(group.order) if x != group.identity]
    return BasicSetPartition(group, [[group.identity]] + ([rest] if rest else []))


def _blocks(labels: np.ndarray) -> list[np.ndarray]:
    _, inverse = np.unique(labels, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    return np.split(order, np.flatnonzero(np.diff(inverse[order])) + 1)


def meet_partitions(x: BasicSetPartition, y: BasicSetPartition) -> BasicSetPartition:
    """
    Common refinement: all nonempty intersections of a set of `x` with a set of `y`.

    Raises:
        ValueError: if the partitions are over different groups.
    """
    if x.group is not y.group:
        e = "Partitions are over different groups."
        raise ValueError(e)
    return BasicSetPartition(x.group, _blocks(x.owner * y.rank + y.owner))


def is_partition_fusion(coarse: BasicSetPartition, fine: BasicSetPartition) -> bool:
    """
    Whether every basic set of `coarse` is a union of basic sets of `fine`.
    """
    if coarse.group is not fine.group:
        return False
    pairs = np.unique(fine.owner * coarse.rank + coarse.owner)
    return len(pairs) == fine.rank


def image_partition(
    partition: BasicSetPartition, f: np.ndarray | Callable[[int], int], target: Optional[GroupTable] = None
) -> BasicSetPartition:
    """
    The partition `{X^f}` for a bijection `f` of the group onto `target` (default: the same group).
    """
    images = np.array([f(x) for x in range(partition.group.order)]) if callable(f) else np.asarray(f)
    group = target if target is not None else partition.group
    return BasicSetPartition(group, [images[list(s)] for s in partition.sets])


def set_radical(group: GroupTable, elements: Iterable[int]) -> Subgroup:
    """
    `rad(X) = {g : Xg = gX = X}`.
    """
    block = np.array(sorted(set(int(x) for x in elements)))
    mask = np.zeros(group.order, dtype=bool)
    mask[block] = True
    right = mask[group.product[block, :]].all(axis=0)
    left = mask[group.product[:, block]].all(axis=1)
    return Subgroup(group, tuple(int(g) for g in np.flatnonzero(right & left)))


def symmetric_basic_sets(partition: BasicSetPartition) -> list[int]:
    """
    Positions of the inverse-closed basic sets other than `{1}`.
    """
    group = partition.group
    result = []
    for i, s in enumerate(partition.sets):
        if s == (group.identity,):
            continue
        if tuple(sorted(int(x) for x in group.inverse[list(s)])) == s:
            result.append(i)
    return result
