"""
Intersection numbers of coherent configurations.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import numpy as np

from uhusiano.models.schemes import TensorFile
from uhusiano.schemes.scheme import Scheme, NotCoherentError
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)

Triple = tuple[int, int, int]


class IntersectionTensor:
    """
    Sparse exact intersection numbers `c_{st}^u`: the number of `γ` with `(α, γ) ∈ s` and `(γ, β) ∈ t`,
    for any `(α, β) ∈ u`.

    Parameters:
        rank: Number of colours.
        valencies: Valency of each colour.
        transpose: Colour of each transposed colour.
        entries: Nonzero intersection numbers.
    """

    def __init__(self, rank: int, valencies: list[int], transpose: list[int], entries: dict[Triple, int]):
        self.rank = rank
        self.valencies = np.asarray(valencies, dtype=np.int64)
        self.transpose = np.asarray(transpose, dtype=np.int64)
        self.entries = entries

    def __repr__(self) -> str:
        return f"IntersectionTensor(rank={self.rank}, nonzero={len(self.entries)})"

    def __getitem__(self, key: Triple) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntersectionTensor):
            return NotImplemented
        return (
            self.rank == other.rank
            and (self.valencies == other.valencies).all()
            and (self.transpose == other.transpose).all()
            and self.entries == other.entries
        )

    def dense(self) -> np.ndarray:
        """
        The full `r × r × r` array indexed `[s, t, u]`.
        """
        array = np.zeros((self.rank, self.rank, self.rank), dtype=np.int64)
        if self.entries:
            keys = np.array(list(self.entries.keys()))
            array[keys[:, 0], keys[:, 1], keys[:, 2]] = list(self.entries.values())
        return array

    def is_commutative(self) -> bool:
        return all(self[(t, s, u)] == c for (s, t, u), c in self.entries.items())

    def check_identities(self) -> list[str]:
        """
        Check `Σ_u c_{st}^u n_u = n_s n_t` for every composable pair and `c_{st}^u = c_{t*s*}^{u*}`.

        Returns:
            Descriptions of the violated identities; empty if all hold.
        """
        problems = []
        n = self.valencies
        dense = self.dense()
        sums = dense @ n
        expected = np.outer(n, n)
        # pairs from different fibres compose to nothing
        composable = dense.any(axis=2)
        for s, t in zip(*np.nonzero(composable & (sums != expected))):
            problems.append(f"sum over u of c[{s},{t},u] n_u = {sums[s, t]} != {expected[s, t]}")
        star = self.transpose
        swapped = dense[np.ix_(star, star, star)].transpose(1, 0, 2)
        for s, t, u in zip(*np.nonzero(dense != swapped)):
            problems.append(f"c[{s},{t},{u}] != c[{star[t]},{star[s]},{star[u]}]")
        return problems

    def to_model(self, scheme_ref: Optional[str] = None) -> TensorFile:
        return TensorFile(
            rank=self.rank,
            valencies=self.valencies.tolist(),
            transpose=self.transpose.tolist(),
            entries=[(s, t, u, c) for (s, t, u), c in sorted(self.entries.items())],
            scheme_ref=scheme_ref,
        )

    def to_file(self, source: str | Path, scheme_ref: Optional[str] = None, overwrite: bool = False) -> bool:
        return _c.save_json(self.to_model(scheme_ref).model_dump(), source, overwrite=overwrite)

    @classmethod
    def from_model(cls, model: TensorFile) -> IntersectionTensor:
        entries = {(s, t, u): c for s, t, u, c in model.entries}
        return cls(model.rank, model.valencies, model.transpose, entries)

    @classmethod
    def from_file(cls, source: str | Path) -> IntersectionTensor:
        return cls.from_model(TensorFile(**_c.load_json(source)))


def intersection_tensor(scheme: Scheme) -> IntersectionTensor:
    """
    Compute the intersection numbers of a coherent configuration from one representative pair per colour.

    Raises:
        NotCoherentError: if the scheme is not WL-stable.

    Returns:
        IntersectionTensor
    """
    if not scheme.is_coherent():
        e = f"{scheme!r} is not coherent."
        raise NotCoherentError(e)
    r, C = scheme.rank, scheme.colors
    first = np.unique(C.ravel(), return_index=True)[1]
    alphas, betas = np.divmod(first, scheme.degree)
    entries: dict[Triple, int] = {}
    for u, (a, b) in enumerate(zip(alphas, betas)):
        counts = np.bincount(C[a] * r + C[:, b], minlength=r * r)
        for key in np.flatnonzero(counts):
            s, t = divmod(int(key), r)
            entries[(s, t, u)] = int(counts[key])
    tensor = IntersectionTensor(r, scheme.valencies().tolist(), scheme.transpose_map().tolist(), entries)
    problems = tensor.check_identities()
    if problems:
        e = f"Intersection numbers are inconsistent: {problems[0]}"
        raise NotCoherentError(e)
    logger.debug(f"Tensor of {scheme!r}: {len(entries)} nonzero entries")
    return tensor


def brute_force_intersection_numbers(scheme: Scheme, tensor: IntersectionTensor) -> Optional[tuple[int, int]]:
    """
    Recount every intersection number over all pairs of points and compare with a tensor.

    Returns:
        `None` if every pair agrees, otherwise the first disagreeing pair.
    """
    n, r = scheme.degree, scheme.rank
    C = scheme.colors
    expected = tensor.dense().transpose(2, 0, 1).reshape(r, r * r)
    for alpha in range(n):
        # keys[β, γ] = c(α, γ) * r + c(γ, β)
        keys = C[alpha][None, :] * r + C.T
        flat = (np.arange(n)[:, None] * (r * r) + keys).ravel()
        counts = np.bincount(flat, minlength=n * r * r).reshape(n, r * r)
        mismatch = np.flatnonzero((counts != expected[C[alpha]]).any(axis=1))
        if len(mismatch):
            return alpha, int(mismatch[0])
    return None
