"""
Coherent configurations as colour partitions of `Ω × Ω`.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from uhusiano.models.schemes import SchemeFile
from uhusiano.groups.table import GroupTable
from uhusiano.schemes.refine import refine, refine_round, split_diagonal
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)


class NotCoherentError(ValueError):
    """
    Raised when an operation needs a coherent (WL-stable) colouring and gets something else.
    """


def canonical_colors(colors: np.ndarray) -> np.ndarray:
    """
    Renumber colours canonically: diagonal colours first, by least point, then the others by valency and
    least pair in row-major order.
    """
    colors = np.asarray(colors, dtype=np.int64)
    n = colors.shape[0]
    labels, first, inverse, sizes = np.unique(
        colors.ravel(), return_index=True, return_inverse=True, return_counts=True
    )
    inverse = inverse.reshape(-1)
    rows = np.repeat(np.arange(n), n)
    row_pairs = np.unique(inverse * n + rows)
    domain = np.bincount(row_pairs // n, minlength=len(labels))
    valency = sizes // domain
    off_diagonal = ~np.isin(labels, np.diagonal(colors))
    order = np.lexsort((first, np.where(off_diagonal, valency, 0), off_diagonal))
    rank = np.empty(len(labels), dtype=np.int64)
    rank[order] = np.arange(len(labels))
    return rank[inverse].reshape(n, n)


class Scheme:
    """
    A colouring of `Ω × Ω`, `Ω = {0..n-1}`, kept in canonical colour order. Coherence is not assumed; use
    `is_coherent` or build through `wl_stabilize`.

    Parameters:
        colors: Square matrix of colour ids.

    Raises:
        ValueError: if the matrix is not square.
    """

    def __init__(self, colors: np.ndarray | list):
        matrix = np.asarray(colors, dtype=np.int64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            e = f"Colour matrix of shape {matrix.shape} is not a nonempty square."
            raise ValueError(e)
        matrix = canonical_colors(matrix)
        matrix.flags.writeable = False
        self.colors = matrix
        self.degree = matrix.shape[0]
        self.rank = int(matrix.max()) + 1

    def __repr__(self) -> str:
        return f"Scheme(degree={self.degree}, rank={self.rank})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scheme):
            return NotImplemented
        return self.degree == other.degree and bool((self.colors == other.colors).all())

    def __hash__(self) -> int:
        return hash((self.degree, self.colors.tobytes()))

    ############################################################################
    # BASIC INVARIANTS
    ############################################################################

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.colors.ravel(), minlength=self.rank)

    def valencies(self) -> np.ndarray:
        """
        Valency of each colour: its size divided by the number of points it leaves from.
        """
        rows = np.repeat(np.arange(self.degree), self.degree)
        pairs = np.unique(self.colors.ravel() * self.degree + rows)
        domain = np.bincount(pairs // self.degree, minlength=self.rank)
        return self.class_sizes() // domain

    def diagonal_colors(self) -> list[int]:
        return sorted(set(int(c) for c in np.diagonal(self.colors)))

    def is_association_scheme(self) -> bool:
        diagonal = np.diagonal(self.colors)
        if not (diagonal == diagonal[0]).all():
            return False
        return int(self.class_sizes()[diagonal[0]]) == self.degree

    def transpose_map(self) -> np.ndarray:
        """
        Colour of the transpose of each colour.

        Raises:
            NotCoherentError: if some transposed colour class is not a colour class.
        """
        pairs = np.unique(self.colors.ravel() * self.rank + self.colors.T.ravel())
        if len(pairs) != self.rank:
            e = "Colouring is not closed under transposition."
            raise NotCoherentError(e)
        return pairs % self.rank

    def is_coherent(self) -> bool:
        """
        Whether one refinement round leaves the colouring unchanged. Diagonal colours must not be shared
        with off-diagonal pairs.
        """
        if int(split_diagonal(self.colors).max()) + 1 != self.rank:
            return False
        return int(refine_round(self.colors).max()) + 1 == self.rank

    def pairs(self, color: int) -> np.ndarray:
        """
        Pairs of one colour as an `(m, 2)` array, in row-major order.
        """
        return np.argwhere(self.colors == color)

    ############################################################################
    # DERIVED SCHEMES
    ############################################################################

    def relabel(self, perm: np.ndarray | list) -> Scheme:
        """
        The image scheme under the point bijection `perm`, with `(α, β)` moved to `(perm[α], perm[β])`.
        """
        perm = np.asarray(perm, dtype=np.int64)
        moved = np.empty_like(self.colors)
        moved[np.ix_(perm, perm)] = self.colors
        return Scheme(moved)

    ############################################################################
    # FILE IO
    ############################################################################

    def to_model(self) -> SchemeFile:
        return SchemeFile(degree=self.degree, rank=self.rank, colors=self.colors.ravel().tolist())

    def to_file(self, source: str | Path, overwrite: bool = False) -> bool:
        return _c.save_json(self.to_model().model_dump(), source, overwrite=overwrite)

    @classmethod
    def from_model(cls, model: SchemeFile) -> Scheme:
        return cls(np.array(model.colors, dtype=np.int64).reshape(model.degree, model.degree))

    @classmethod
    def from_file(cls, source: str | Path) -> Scheme:
        return cls.from_model(SchemeFile(**_c.load_json(source)))


###################################################################################################
### Construction
###################################################################################################


def wl_stabilize(initial: np.ndarray | Scheme) -> Scheme:
    """
    The coarsest coherent refinement of a colouring, canonically numbered.

    Parameters:
        initial: Any square colour matrix, or a `Scheme`.

    Returns:
        Scheme
    """
    colors = initial.colors if isinstance(initial, Scheme) else np.asarray(initial, dtype=np.int64)
    before = len(np.unique(colors))
    stable = Scheme(refine(colors))
    logger.info(f"WL stabilization on {stable.degree} points: rank {before} -> {stable.rank}")
    return stable


def trivial_scheme(n: int) -> Scheme:
    """
    Rank-2 scheme (rank 1 when `n = 1`).
    """
    return Scheme(1 - np.eye(n, dtype=np.int64))


def scheme_from_graph(n: int, edges: Iterable[tuple[int, int]], directed: bool = False) -> np.ndarray:
    """
    Initial colouring of an `n`-vertex graph: diagonal `0`, non-edges `1`, edges `2`.
    """
    colors = 1 - np.eye(n, dtype=np.int64)
    for a, b in edges:
        colors[a, b] = 2
        if not directed:
            colors[b, a] = 2
    return colors


def regular_scheme(group: GroupTable) -> Scheme:
    """
    Cayley scheme of the singleton partition: `(g, h)` coloured by `h g⁻¹`.
    """
    return Scheme(group.product[:, group.inverse].T)


def meet_schemes(x: Scheme, y: Scheme) -> Scheme:
    """
    Common refinement of two colourings by intersecting colour classes.

    Raises:
        ValueError: if the degrees differ.
    """
    if x.degree != y.degree:
        e = f"Schemes have different degrees {x.degree} and {y.degree}."
        raise ValueError(e)
    return Scheme(x.colors * y.rank + y.colors)


def is_fusion(coarse: Scheme, fine: Scheme) -> bool:
    """
    Whether every colour class of `coarse` is a union of colour classes of `fine`.
    """
    if coarse.degree != fine.degree:
        return False
    return len(np.unique(fine.colors * coarse.rank + coarse.colors)) == fine.rank


def scheme_from_labels(labels: np.ndarray, n: Optional[int] = None) -> Scheme:
    """
    Scheme from a flat or square array of labels, e.g. orbit ids of pairs.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.ndim == 1:
        n = n or int(round(len(labels) ** 0.5))
        labels = labels.reshape(n, n)
    return Scheme(labels)
