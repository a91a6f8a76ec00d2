"""
2-orbits of permutation groups, schurity, and the fixed point property of automorphisms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from uhusiano.models.config import DEFAULT_BUDGET
from uhusiano.perms.group import PermGroup
from uhusiano.perms.permutation import NotAutomorphismError, Permutation, is_automorphism
from uhusiano.perms.search import automorphism_group
from uhusiano.schemes.parabolic import Parabolic
from uhusiano.schemes.scheme import Scheme

logger = logging.getLogger(__name__)


def two_orbit_partition(group: PermGroup) -> Scheme:
    """
    The orbits of `group` on `Ω × Ω`, as a scheme.

    Pair `(α, β)` is node `α n + β`; each generator adds the edges `(α, β) → (α^g, β^g)`, and the orbits
    are the connected components.
    """
    n = group.degree
    nodes = np.arange(n * n)
    alpha, beta = nodes // n, nodes % n
    if group.generators:
        heads = np.concatenate([g.image[alpha] * n + g.image[beta] for g in group.generators])
        tails = np.tile(nodes, len(group.generators))
    else:
        heads = tails = nodes
    graph = csr_matrix((np.ones(len(tails), dtype=np.int8), (tails, heads)), shape=(n * n, n * n))
    count, labels = connected_components(graph, directed=True, connection="weak")
    logger.debug(f"{count} 2-orbits on {n} points")
    return Scheme(labels.reshape(n, n))


@dataclass(frozen=True)
class Schurity:
    """
    Comparison of a scheme with the 2-orbits of its automorphism group. `witness` is a colour that is not
    a single 2-orbit, preferring symmetric colours, or `None` when the scheme is schurian.
    """

    schurian: bool
    witness: Optional[int]
    witness_size: int
    group: PermGroup
    orbits: Scheme


def is_schurian(scheme: Scheme, group: Optional[PermGroup] = None, budget: int = DEFAULT_BUDGET) -> Schurity:
    """
    Whether a scheme coincides with the 2-orbit partition of its automorphism group.

    Parameters:
        scheme: A WL-stable scheme.
        group: Precomputed automorphism group.
        budget: Node budget of the automorphism search.

    Returns:
        Schurity
    """
    if group is None:
        group = automorphism_group(scheme, budget=budget)
    orbits = two_orbit_partition(group)
    # orbit count per colour; each colour is a union of 2-orbits
    pieces = np.bincount(np.unique(scheme.colors.ravel() * orbits.rank + orbits.colors.ravel()) // orbits.rank)
    split = np.flatnonzero(pieces > 1)
    witness = None
    if len(split):
        transpose = scheme.transpose_map()
        symmetric = [int(s) for s in split if transpose[s] == s]
        witness = symmetric[0] if symmetric else int(split[0])
    size = int(scheme.class_sizes()[witness]) if witness is not None else 0
    logger.info(f"{scheme!r} vs 2-orbits of rank {orbits.rank}: witness {witness}")
    return Schurity(schurian=witness is None, witness=witness, witness_size=size, group=group, orbits=orbits)


def verify_fixed_point_lemma(scheme: Scheme, parabolic: Parabolic, f: Permutation | np.ndarray) -> bool:
    """
    An automorphism fixing a point in every class of a thin parabolic is the identity.

    Returns `True` when the hypothesis fails (the statement is vacuous) or `f` is the identity.

    Raises:
        ValueError: if the parabolic is not thin.
        NotAutomorphismError: if `f` moves some colour.
    """
    f = f if isinstance(f, Permutation) else Permutation(f)
    if not parabolic.is_thin():
        e = "The parabolic is not thin."
        raise ValueError(e)
    if not is_automorphism(scheme.colors, f):
        e = "Not an automorphism of the scheme."
        raise NotAutomorphismError(e)
    fixed = f.fixed_points()
    if not np.isin(np.arange(parabolic.class_count), parabolic.labels[fixed]).all():
        return True
    return f.is_identity()
