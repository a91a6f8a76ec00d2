"""
Permutations of `Ω = {0..n-1}` as image arrays.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np
from sympy.combinatorics import Permutation as SympyPermutation


class NotAutomorphismError(ValueError):
    """
    Raised when a permutation expected to preserve every colour does not.
    """


class Permutation:
    """
    A bijection of `0..n-1`, with `image[α]` the image of `α`. Products compose left to right:
    `(f * g)(α) = g(f(α))`, matching `sympy.combinatorics`.

    Parameters:
        image: Image of every point.

    Raises:
        ValueError: if `image` is not a bijection.
    """

    def __init__(self, image: Iterable[int] | np.ndarray):
        array = np.array(image, dtype=np.int64)
        if array.ndim != 1 or not (np.sort(array) == np.arange(len(array))).all():
            e = "Image array is not a permutation."
            raise ValueError(e)
        array.flags.writeable = False
        self.image = array

    def __repr__(self) -> str:
        return f"Permutation({self.image.tolist()})"

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, point: int) -> int:
        return int(self.image[point])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return len(self) == len(other) and bool((self.image == other.image).all())

    def __hash__(self) -> int:
        return hash(self.image.tobytes())

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation(other.image[self.image])

    def __invert__(self) -> Permutation:
        return Permutation(np.argsort(self.image))

    @property
    def degree(self) -> int:
        return len(self.image)

    def is_identity(self) -> bool:
        return bool((self.image == np.arange(self.degree)).all())

    def fixed_points(self) -> np.ndarray:
        return np.flatnonzero(self.image == np.arange(self.degree))

    def to_sympy(self) -> SympyPermutation:
        return SympyPermutation(self.image.tolist())

    @classmethod
    def from_sympy(cls, perm: SympyPermutation, degree: int | None = None) -> Permutation:
        image = perm.array_form
        if degree is not None and len(image) < degree:
            image = image + list(range(len(image), degree))
        return cls(image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(np.arange(n))


def is_automorphism(colors: np.ndarray, perm: Permutation | np.ndarray) -> bool:
    """
    Whether `colors[perm[α], perm[β]] == colors[α, β]` for all pairs.
    """
    image = perm.image if isinstance(perm, Permutation) else np.asarray(perm)
    return bool((colors[np.ix_(image, image)] == colors).all())


def is_isomorphism(source: np.ndarray, target: np.ndarray, perm: Permutation | np.ndarray) -> bool:
    """
    Whether `target[perm[α], perm[β]] == source[α, β]` for all pairs.
    """
    image = perm.image if isinstance(perm, Permutation) else np.asarray(perm)
    return bool((target[np.ix_(image, image)] == source).all())


class SearchBudgetExceeded(RuntimeError):
    """
    Raised when a backtracking search exhausts its node budget. The outcome is inconclusive, never
    "no isomorphism".
    """
