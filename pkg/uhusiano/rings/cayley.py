"""
Cayley schemes of Schur partitions, and group isomorphisms inducing a given bijection of basic sets.
"""

import logging

import numpy as np

from uhusiano.rings.partition import (
    BasicSetPartition,
    StructureConstants,
    structure_constants,
    symmetric_basic_sets,
    validate_schur,
)
from uhusiano.schemes.scheme import Scheme

logger = logging.getLogger(__name__)


class CayleyIsomorphismError(ValueError):
    """
    Raised when no group isomorphism can be built from a bijection of basic sets.
    """


def cayley_scheme(partition: BasicSetPartition) -> Scheme:
    """
    The scheme on the group elements with the pair `(g, xg)` coloured by the basic set of `x`.

    Raises:
        ValueError: if the partition is not a Schur partition.

    Returns:
        Scheme
    """
    report = validate_schur(partition)
    if not report.passed:
        e = f"Not a Schur partition: {', '.join(c.name for c in report.failures())}."
        raise ValueError(e)
    group = partition.group
    # colors[g, h] = owner(h g⁻¹)
    scheme = Scheme(partition.owner[group.product[:, group.inverse].T])
    logger.info(f"Cayley scheme of degree {scheme.degree} and rank {scheme.rank}")
    return scheme


def set_colors(partition: BasicSetPartition, scheme: Scheme) -> np.ndarray:
    """
    Colour of `r(X)` for every basic set `X`, read off the row of the identity.
    """
    row = scheme.colors[partition.group.identity]
    return np.array([int(row[s[0]]) for s in partition.sets], dtype=np.int64)


def color_bijection_to_sets(
    phi: np.ndarray, src: BasicSetPartition, src_scheme: Scheme, dst: BasicSetPartition, dst_scheme: Scheme
) -> np.ndarray:
    """
    Translate a colour bijection between Cayley schemes into the bijection of basic sets.
    """
    src_colors = set_colors(src, src_scheme)
    dst_colors = set_colors(dst, dst_scheme)
    to_set = np.empty(len(dst_colors), dtype=np.int64)
    to_set[dst_colors] = np.arange(len(dst_colors))
    return to_set[np.asarray(phi)[src_colors]]


def _unique_involution(partition: BasicSetPartition, elements: tuple[int, ...]) -> int:
    orders = partition.group.element_orders[list(elements)]
    involutions = [x for x, m in zip(elements, orders) if m == 2]
    if len(involutions) != 1:
        e = f"Basic set {elements[:3]}... holds {len(involutions)} involutions, not exactly one."
        raise CayleyIsomorphismError(e)
    return involutions[0]


def _check_constants(
    psi: np.ndarray, src: StructureConstants, dst: StructureConstants, src_sizes: list[int], dst_sizes: list[int]
):
    if sorted(psi.tolist()) != list(range(len(src_sizes))) or len(src_sizes) != len(dst_sizes):
        e = "psi is not a bijection of basic sets."
        raise CayleyIsomorphismError(e)
    if any(src_sizes[i] != dst_sizes[psi[i]] for i in range(len(src_sizes))):
        e = "psi does not preserve basic set sizes."
        raise CayleyIsomorphismError(e)
    mapped = {(int(psi[x]), int(psi[y]), int(psi[z])): c for (x, y, z), c in src.entries.items()}
    if mapped != dst.entries:
        e = "psi does not preserve the structure constants."
        raise CayleyIsomorphismError(e)


def cayley_iso_from_algebraic(psi: np.ndarray | list, src: BasicSetPartition, dst: BasicSetPartition) -> np.ndarray:
    """
    Build a group isomorphism `f` with `X^f = X^ψ` for every basic set `X`.

    The singleton basic sets of `src` form a subgroup `P`, and `f` agrees on `P` with the map read off
    the singleton images. Each nontrivial inverse-closed basic set `X_i` holds a unique involution `a_i`,
    and `ψ(X_i)` must hold a unique involution `b_i`. Then `f(h a_i) = f(h) b_i` for `h ∈ P`.

    Parameters:
        psi: Image position of every basic set of `src`.
        src: Partition of the form `{{g}, X_i g : g ∈ P}`.
        dst: A Schur partition of a group of the same order.

    Raises:
        CayleyIsomorphismError: if `psi` does not preserve the structure constants, some image lacks a
            unique involution, or the extension is not an isomorphism inducing `psi`.

    Returns:
        Image array `f` of the elements of `src.group` in `dst.group`.
    """
    psi = np.asarray(psi, dtype=np.int64)
    G, H = src.group, dst.group
    if G.order != H.order:
        e = f"Groups of orders {G.order} and {H.order} are not isomorphic."
        raise CayleyIsomorphismError(e)
    _check_constants(
        psi,
        structure_constants(src),
        structure_constants(dst),
        [len(s) for s in src.sets],
        [len(s) for s in dst.sets],
    )
    f = np.full(G.order, -1, dtype=np.int64)
    thin = [i for i, s in enumerate(src.sets) if len(s) == 1]
    for i in thin:
        image = dst.sets[psi[i]]
        if len(image) != 1:
            e = f"Singleton {src.sets[i]} maps to a set of size {len(image)}."
            raise CayleyIsomorphismError(e)
        f[src.sets[i][0]] = image[0]
    P = [src.sets[i][0] for i in thin]
    symmetric = symmetric_basic_sets(src)
    if len(symmetric) != 3:
        e = f"Expected three nontrivial inverse-closed basic sets, found {len(symmetric)}."
        raise CayleyIsomorphismError(e)
    for i in symmetric:
        a = _unique_involution(src, src.sets[i])
        b = _unique_involution(dst, dst.sets[psi[i]])
        f[G.product[P, a]] = H.product[f[P], b]
    if (f < 0).any() or len(np.unique(f)) != G.order:
        e = "The extension is not a bijection."
        raise CayleyIsomorphismError(e)
    if not (H.product[np.ix_(f, f)] == f[G.product]).all():
        e = "The extension is not multiplicative."
        raise CayleyIsomorphismError(e)
    for i, s in enumerate(src.sets):
        if tuple(sorted(f[list(s)].tolist())) != dst.sets[psi[i]]:
            e = f"The isomorphism maps basic set {i} off its image {int(psi[i])}."
            raise CayleyIsomorphismError(e)
    logger.debug("Built a Cayley isomorphism inducing the basic set bijection")
    return f
