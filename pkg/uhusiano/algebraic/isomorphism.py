"""
Algebraic isomorphisms: colour bijections preserving every intersection number, and the point bijections
inducing them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from uhusiano.models.config import DEFAULT_BUDGET
from uhusiano.perms.permutation import Permutation, SearchBudgetExceeded
from uhusiano.perms.search import Backtrack, find_isomorphism
from uhusiano.schemes.scheme import Scheme
from uhusiano.schemes.tensor import IntersectionTensor

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ColorBijection:
    """
    A bijection `φ` from the colours of `source` to the colours of `target`, with `image[s] = s^φ`.
    """

    source: IntersectionTensor
    target: IntersectionTensor
    image: np.ndarray = field(repr=False)

    def __post_init__(self):
        image = np.array(self.image, dtype=np.int64)
        image.flags.writeable = False
        object.__setattr__(self, "image", image)

    def __repr__(self) -> str:
        return f"ColorBijection({self.image.tolist()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorBijection):
            return NotImplemented
        return len(self.image) == len(other.image) and bool((self.image == other.image).all())

    def __hash__(self) -> int:
        return hash(self.image.tobytes())

    def is_identity(self) -> bool:
        return bool((self.image == np.arange(len(self.image))).all())

    def inverse(self) -> ColorBijection:
        return ColorBijection(self.target, self.source, np.argsort(self.image))

    def verify(self) -> bool:
        """
        Exhaustive check over every `(s, t, u)`: `c_{st}^u = c'_{s^φ t^φ}^{u^φ}`, with valencies and
        transposes preserved.
        """
        phi = self.image
        r = self.source.rank
        if self.target.rank != r or len(phi) != r or sorted(phi.tolist()) != list(range(r)):
            return False
        if (self.target.valencies[phi] != self.source.valencies).any():
            return False
        if (self.target.transpose[phi] != phi[self.source.transpose]).any():
            return False
        return bool((self.target.dense()[np.ix_(phi, phi, phi)] == self.source.dense()).all())


###################################################################################################
### Enumeration
###################################################################################################


def _invariants(tensor: IntersectionTensor, dense: np.ndarray) -> np.ndarray:
    """
    Per-colour invariants preserved by every algebraic isomorphism: valency, symmetry, being diagonal,
    and the sorted values of `c_{ss}^u` and `c_{ss*}^u` over `u`.
    """
    r = tensor.rank
    colors = np.arange(r)
    star = tensor.transpose
    diagonal = (tensor.valencies == 1) & (dense[colors, colors, colors] == 1)
    squares = np.sort(dense[colors, colors], axis=1)
    norms = np.sort(dense[colors, star], axis=1)
    return np.column_stack([tensor.valencies, star == colors, diagonal, squares, norms])


class _Enumeration:
    """
    Backtracking over colours with forward propagation. Each new assignment `s ↦ t` is checked against the
    assigned colours on every slice through `s`; a product row with a single nonzero entry forces the image
    of that entry, and `s* ↦ t*` is forced as well. Pruning only ever rejects exact violations.
    """

    def __init__(self, src: IntersectionTensor, dst: IntersectionTensor, budget: int):
        self.src, self.dst = src, dst
        self.S, self.D = src.dense(), dst.dense()
        self.r = src.rank
        self.budget = budget
        self.nodes = 0
        a, b = _invariants(src, self.S), _invariants(dst, self.D)
        _, ids = np.unique(np.concatenate([a, b]), axis=0, return_inverse=True)
        ids = ids.reshape(-1)
        self.domain = ids[: self.r, None] == ids[None, self.r :]
        diagonal = a[:, 2].astype(bool)
        # valency, then diagonal colours first, then id
        self.order = np.lexsort((np.arange(self.r), ~diagonal, src.valencies))

    def _propagate(self, phi: np.ndarray, used: np.ndarray, queue: list[tuple[int, int]]) -> bool:
        S, D = self.S, self.D
        while queue:
            s, t = queue.pop()
            if phi[s] == t:
                continue
            if phi[s] != -1 or used[t] or not self.domain[s, t]:
                return False
            phi[s] = t
            used[t] = True
            A = np.flatnonzero(phi >= 0)
            B = phi[A]
            if not (
                (S[s][np.ix_(A, A)] == D[t][np.ix_(B, B)]).all()
                and (S[A, s][:, A] == D[B, t][:, B]).all()
                and (S[np.ix_(A, A, [s])] == D[np.ix_(B, B, [t])]).all()
            ):
                return False
            queue.append((int(self.src.transpose[s]), int(self.dst.transpose[t])))
            rows_s = np.concatenate([S[s, A], S[A, s]])
            rows_d = np.concatenate([D[t, B], D[B, t]])
            if not (np.sort(rows_s, axis=1) == np.sort(rows_d, axis=1)).all():
                return False
            single = np.count_nonzero(rows_s, axis=1) == 1
            for u, v in zip(rows_s[single].argmax(axis=1), rows_d[single].argmax(axis=1)):
                queue.append((int(u), int(v)))
        return True

    def run(self) -> list[np.ndarray]:
        found: list[np.ndarray] = []
        self._descend(np.full(self.r, -1, dtype=np.int64), np.zeros(self.r, dtype=bool), found)
        return found

    def _descend(self, phi: np.ndarray, used: np.ndarray, found: list[np.ndarray]):
        self.nodes += 1
        if self.nodes > self.budget:
            e = f"Algebraic isomorphism enumeration exceeded {self.budget} nodes."
            raise SearchBudgetExceeded(e)
        open_colors = self.order[phi[self.order] < 0]
        if not len(open_colors):
            if (self.D[np.ix_(phi, phi, phi)] == self.S).all():
                found.append(phi.copy())
            return
        s = int(open_colors[0])
        for t in np.flatnonzero(self.domain[s] & ~used):
            trial, trial_used = phi.copy(), used.copy()
            if self._propagate(trial, trial_used, [(s, int(t))]):
                self._descend(trial, trial_used, found)


def enumerate_algebraic_isos(
    src: IntersectionTensor, dst: IntersectionTensor, budget: int = DEFAULT_BUDGET
) -> list[ColorBijection]:
    """
    Every algebraic isomorphism from `src` to `dst`, sorted by image array.

    Parameters:
        src: Source tensor.
        dst: Target tensor.
        budget: Node budget of the backtracking.

    Raises:
        SearchBudgetExceeded: if the budget runs out.

    Returns:
        list of ColorBijection, empty when ranks or valency multisets differ.
    """
    if src.rank != dst.rank or sorted(src.valencies.tolist()) != sorted(dst.valencies.tolist()):
        return []
    search = _Enumeration(src, dst, budget)
    images = sorted(tuple(phi.tolist()) for phi in search.run())
    found = [ColorBijection(src, dst, np.array(image)) for image in images]
    if not all(phi.verify() for phi in found):
        e = "Enumeration produced a colour map that does not preserve the tensor."
        raise RuntimeError(e)
    logger.info(f"{len(found)} algebraic isomorphisms of rank {src.rank} after {search.nodes} nodes")
    return found


def find_inducing_isomorphism(
    phi: ColorBijection, x: Scheme, y: Scheme, budget: int = DEFAULT_BUDGET, search: Optional[Backtrack] = None
) -> Optional[Permutation]:
    """
    A point bijection `m` with `s^m = s^φ` for every colour `s` of `x`, or `None` when the search exhausts
    without one.

    Parameters:
        phi: Algebraic isomorphism between the tensors of `x` and `y`.
        x: Source scheme.
        y: Target scheme.
        budget: Node budget.
        search: A prepared search on `x`, reused across calls.

    Raises:
        ValueError: if `phi` does not fit the schemes or does not preserve the tensor.
        SearchBudgetExceeded: if the budget runs out.
    """
    if len(phi.image) != x.rank or x.rank != y.rank or x.degree != y.degree:
        e = f"Colour map of length {len(phi.image)} does not fit schemes of ranks {x.rank} and {y.rank}."
        raise ValueError(e)
    if (phi.source.valencies != x.valencies()).any() or not phi.verify():
        e = "Colour map is not an algebraic isomorphism between these schemes."
        raise ValueError(e)
    # pull the target back so that a solution maps colours of x onto equal ids
    target = np.argsort(phi.image)[y.colors]
    if search is not None:
        search.nodes = 0
        search.budget = budget
        found = search.descend(0, search.refine(target), target)
        return Permutation(found) if found is not None else None
    return find_isomorphism(x.colors, target, budget=budget)
