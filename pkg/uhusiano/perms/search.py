"""
Individualization–refinement backtracking for automorphisms and isomorphisms of colourings.

A search tree node is a WL-stable colouring in which some points have been individualized. The left path
always individualizes the least point of the smallest non-singleton diagonal cell, and right branches try
every point of the matching cell. Refinement is label-equivariant, so an isomorphism maps left colours to
equal right colours, and a branch whose colour profile differs from the left one is dead.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from uhusiano.models.config import DEFAULT_BUDGET
from uhusiano.perms.group import PermGroup
from uhusiano.perms.permutation import (
    NotAutomorphismError,
    Permutation,
    SearchBudgetExceeded,
    is_automorphism,
    is_isomorphism,
)
from uhusiano.schemes.refine import individualize, refine
from uhusiano.schemes.scheme import Scheme

logger = logging.getLogger(__name__)


def _profile(colors: np.ndarray) -> np.ndarray:
    return np.bincount(colors.ravel())


def _target_cell(colors: np.ndarray) -> Optional[tuple[int, int]]:
    """
    `(point, colour)` for the least point of the smallest non-singleton diagonal cell, ties broken by colour
    id. `None` once the diagonal is discrete.
    """
    diagonal = np.diagonal(colors)
    values, counts = np.unique(diagonal, return_counts=True)
    open_cells = counts > 1
    if not open_cells.any():
        return None
    candidates = np.flatnonzero(open_cells)
    cell = candidates[np.lexsort((values[candidates], counts[candidates]))[0]]
    color = int(values[cell])
    return int(np.flatnonzero(diagonal == color)[0]), color


def _leaf_map(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    # π sends each point to the right point carrying the same diagonal colour
    perm = np.empty(left.shape[0], dtype=np.int64)
    perm[np.argsort(np.diagonal(left), kind="stable")] = np.argsort(np.diagonal(right), kind="stable")
    return perm


class Backtrack:
    """
    Shared state of a search: the left path from the root and the node counter.

    Parameters:
        source: Colour matrix whose points are mapped.
        budget: Maximum number of refinements before giving up.
    """

    def __init__(self, source: np.ndarray, budget: int = DEFAULT_BUDGET):
        self.source = np.asarray(source, dtype=np.int64)
        self.budget = budget
        self.nodes = 0
        self.path: list[np.ndarray] = [self.refine(self.source)]
        self.base: list[int] = []
        self.cells: list[int] = []
        while (target := _target_cell(self.path[-1])) is not None:
            point, color = target
            self.base.append(point)
            self.cells.append(color)
            self.path.append(self.refine(individualize(self.path[-1], point)))
        logger.debug(f"Left path of depth {len(self.base)} on {self.source.shape[0]} points")

    def refine(self, colors: np.ndarray) -> np.ndarray:
        self.nodes += 1
        if self.nodes > self.budget:
            e = f"Search exceeded its budget of {self.budget} nodes."
            raise SearchBudgetExceeded(e)
        return refine(colors)

    def cell(self, depth: int, right: np.ndarray) -> np.ndarray:
        """
        Points of `right` in the cell matching the left cell at `depth`.
        """
        return np.flatnonzero(np.diagonal(right) == self.cells[depth])

    def descend(self, depth: int, right: np.ndarray, target: np.ndarray) -> Optional[np.ndarray]:
        """
        Depth-first search below a right node at `depth` for a map `π` with `target[π, π] == source`.
        """
        left = self.path[depth]
        if len(_profile(left)) != len(_profile(right)) or (_profile(left) != _profile(right)).any():
            return None
        if depth == len(self.base):
            perm = _leaf_map(left, right)
            return perm if is_isomorphism(self.source, target, perm) else None
        for gamma in self.cell(depth, right):
            found = self.descend(depth + 1, self.refine(individualize(right, int(gamma))), target)
            if found is not None:
                return found
        return None


def automorphism_group(scheme: Scheme, seed: Optional[PermGroup] = None, budget: int = DEFAULT_BUDGET) -> PermGroup:
    """
    The full group of colour-preserving permutations of a scheme.

    Levels of the left path are processed bottom-up. At level `k`, every point of the cell of `β_k` that
    is not yet in the orbit of `β_k` under the known generators fixing `β_1..β_{k-1}` is tried as an image
    of `β_k`; a successful branch adds a generator. Known automorphisms from `seed` prune the same way.

    Parameters:
        scheme: The scheme.
        seed: Known automorphisms, e.g. the right translations of a Cayley scheme.
        budget: Node budget.

    Raises:
        NotAutomorphismError: if a seed generator moves some colour.
        SearchBudgetExceeded: if the budget runs out.

    Returns:
        PermGroup
    """
    generators: list[Permutation] = []
    if seed is not None:
        for g in seed.generators:
            if not is_automorphism(scheme.colors, g):
                e = "Seed generator is not an automorphism of the scheme."
                raise NotAutomorphismError(e)
        generators.extend(seed.generators)
    search = Backtrack(scheme.colors, budget=budget)
    for k in reversed(range(len(search.base))):
        prefix = search.base[:k]
        beta = search.base[k]
        orbit = _orbit(beta, [g for g in generators if all(g(x) == x for x in prefix)])
        for gamma in search.cell(k, search.path[k]):
            gamma = int(gamma)
            if gamma in orbit:
                continue
            right = search.refine(individualize(search.path[k], gamma))
            found = search.descend(k + 1, right, scheme.colors)
            if found is not None:
                generators.append(Permutation(found))
                orbit = _orbit(beta, [g for g in generators if all(g(x) == x for x in prefix)])
        logger.debug(f"Level {k}: orbit of {beta} has {len(orbit)} points")
    group = PermGroup(scheme.degree, generators)
    logger.info(f"Automorphism group of {scheme!r}: order {group.order}, {search.nodes} nodes")
    return group


def _orbit(point: int, generators: list[Permutation]) -> set[int]:
    orbit, frontier = {point}, [point]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = g(x)
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def find_isomorphism(source: np.ndarray, target: np.ndarray, budget: int = DEFAULT_BUDGET) -> Optional[Permutation]:
    """
    A point bijection `π` with `target[π(α), π(β)] == source[α, β]`, or `None` after exhausting the tree.
    Colour ids of `source` and `target` must mean the same thing.

    Raises:
        SearchBudgetExceeded: if the budget runs out.
    """
    source = np.asarray(source, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    if source.shape != target.shape:
        return None
    search = Backtrack(source, budget=budget)
    found = search.descend(0, search.refine(target), target)
    logger.debug(f"Isomorphism search: {'found' if found is not None else 'none'} after {search.nodes} nodes")
    return Permutation(found) if found is not None else None
