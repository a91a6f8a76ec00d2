"""
Parabolics (colour unions forming equivalence relations), the thin radical, quotients and radicals of
relations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from uhusiano.groups.table import GroupTable
from uhusiano.schemes.scheme import Scheme

logger = logging.getLogger(__name__)


class NotParabolicError(ValueError):
    """
    Raised when a colour union is not an equivalence relation, or a quotient is not well defined.
    """


class Parabolic:
    """
    A set of colours of a scheme whose union `e` is an equivalence relation on the points.

    Parameters:
        scheme: The scheme.
        colors: Colours forming the union.

    Raises:
        NotParabolicError: if the union is not reflexive, symmetric and transitive.
    """

    def __init__(self, scheme: Scheme, colors: Iterable[int]):
        self.scheme = scheme
        self.colors: tuple[int, ...] = tuple(sorted(set(int(c) for c in colors)))
        relation = np.isin(scheme.colors, self.colors)
        if not np.diagonal(relation).all():
            e = "Colour union is not reflexive."
            raise NotParabolicError(e)
        count, labels = connected_components(csr_matrix(relation), directed=True, connection="weak")
        # equivalence relation iff it coincides with "same weak component"
        if not (relation == (labels[:, None] == labels[None, :])).all():
            e = "Colour union is not an equivalence relation."
            raise NotParabolicError(e)
        first = np.unique(labels, return_index=True)[1]
        order = np.argsort(first)
        relabel = np.empty(count, dtype=np.int64)
        relabel[order] = np.arange(count)
        self.labels = relabel[labels]
        self.labels.flags.writeable = False
        self.relation = relation

    def __repr__(self) -> str:
        return f"Parabolic(colors={len(self.colors)}, classes={self.class_count})"

    @property
    def class_count(self) -> int:
        return int(self.labels.max()) + 1

    def classes(self) -> list[np.ndarray]:
        """
        Equivalence classes, ordered by least point.
        """
        return [np.flatnonzero(self.labels == k) for k in range(self.class_count)]

    def class_sizes(self) -> list[int]:
        return np.bincount(self.labels).tolist()

    def is_thin(self) -> bool:
        valencies = self.scheme.valencies()
        return all(valencies[c] == 1 for c in self.colors)


def diagonal_parabolic(scheme: Scheme) -> Parabolic:
    return Parabolic(scheme, scheme.diagonal_colors())


def _thin_map(scheme: Scheme, color: int) -> np.ndarray:
    # Point map α ↦ β for the unique (α, β) of a valency-one colour; -1 outside its domain
    mask = scheme.colors == color
    return np.where(mask.any(axis=1), mask.argmax(axis=1), -1)


@dataclass(frozen=True)
class ThinRadical:
    """
    The valency-one colours of an association scheme, their union `e`, and the group they form under
    composition. Element `i` of `group` is the colour `colors[i]`.
    """

    colors: tuple[int, ...]
    parabolic: Parabolic
    group: GroupTable


def thin_radical(scheme: Scheme) -> ThinRadical:
    """
    Compute the thin radical of an association scheme.

    Raises:
        ValueError: if the scheme is not an association scheme.
    """
    if not scheme.is_association_scheme():
        e = "The thin radical needs an association scheme."
        raise ValueError(e)
    valencies = scheme.valencies()
    colors = tuple(int(c) for c in np.flatnonzero(valencies == 1))
    position = {c: i for i, c in enumerate(colors)}
    maps = [_thin_map(scheme, c) for c in colors]
    points = np.arange(scheme.degree)
    table = np.empty((len(colors), len(colors)), dtype=np.int64)
    for i, s in enumerate(maps):
        for j, t in enumerate(maps):
            composed = scheme.colors[points, t[s]]
            table[i, j] = position[int(composed[0])]
    group = GroupTable(table, label="thin radical")
    radical = ThinRadical(colors=colors, parabolic=Parabolic(scheme, colors), group=group)
    logger.debug(f"Thin radical of {scheme!r}: {len(colors)} colours")
    return radical


def quotient_scheme(scheme: Scheme, parabolic: Parabolic) -> Scheme:
    """
    The scheme on the classes of a parabolic, with the pair of classes `(K, L)` coloured by the multiset of
    fine colours on `K × L`.

    Raises:
        NotParabolicError: if the parabolic belongs to another scheme or the quotient is not well defined.
    """
    if parabolic.scheme is not scheme and parabolic.scheme != scheme:
        e = "Parabolic belongs to a different scheme."
        raise NotParabolicError(e)
    m, r = parabolic.class_count, scheme.rank
    labels = parabolic.labels
    keys = (labels[:, None] * m + labels[None, :]).ravel()
    counts = np.zeros((m * m, r), dtype=np.int64)
    np.add.at(counts, (keys, scheme.colors.ravel()), 1)
    _, quotient = np.unique(counts, axis=0, return_inverse=True)
    quotient = quotient.reshape(-1)
    # every fine colour must land in exactly one quotient colour
    owners = np.unique(quotient[keys] * r + scheme.colors.ravel())
    if len(owners) != r:
        e = "Quotient colouring is not well defined."
        raise NotParabolicError(e)
    return Scheme(quotient.reshape(m, m))


def radical_of_color(scheme: Scheme, color: int, radical: ThinRadical | None = None) -> Parabolic:
    """
    The largest thin parabolic `e_s` inside the thin radical with `e_s s = s e_s = s`.

    Parameters:
        scheme: An association scheme.
        color: The relation `s`.
        radical: Precomputed thin radical.

    Returns:
        Parabolic
    """
    if radical is None:
        radical = thin_radical(scheme)
    S = scheme.colors == color
    kept = []
    for u in radical.colors:
        sigma = _thin_map(scheme, u)
        inverse = np.argsort(sigma)
        # u∘s relates α to β when (σ_u(α), β) ∈ s; s∘u relates α to σ_u(γ) when (α, γ) ∈ s
        if (S[sigma] == S).all() and (S[:, inverse] == S).all():
            kept.append(u)
    return Parabolic(scheme, kept)


def compose_with_thin(scheme: Scheme, color: int, thin: int) -> int:
    """
    The colour `s u` for a thin colour `u`, read off any pair of `s`.
    """
    alpha, beta = scheme.pairs(color)[0]
    return int(scheme.colors[alpha, _thin_map(scheme, thin)[beta]])
