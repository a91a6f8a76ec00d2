"""
Weisfeiler–Leman refinement of colourings of `Ω × Ω`.

Every pair `(α, β)` is recoloured by its exact signature: its own colour, the colour of `(β, α)`, and the
sorted list of codes `c(α, γ) * r + c(γ, β)` over all intermediate points `γ`. New colour ids are the ranks
of the signatures in lexicographic order, so the refinement commutes with any relabelling of the points.
"""

import logging

import numpy as np

logger = logging.getLogger(__name__)

CHUNK_ELEMENTS = 1 << 22


def _dense_labels(values: np.ndarray) -> np.ndarray:
    _, inverse = np.unique(values, return_inverse=True)
    return inverse.reshape(values.shape).astype(np.int64)


def split_diagonal(colors: np.ndarray) -> np.ndarray:
    """
    Separate diagonal pairs from off-diagonal pairs sharing a colour.
    """
    colors = np.asarray(colors, dtype=np.int64)
    n = colors.shape[0]
    return _dense_labels(colors * 2 + np.eye(n, dtype=np.int64))


def refine_round(colors: np.ndarray) -> np.ndarray:
    """
    One recolouring round. The input must use dense colour ids `0..r-1`.

    Returns:
        The refined colour matrix, again with dense ids.
    """
    n = colors.shape[0]
    r = int(colors.max()) + 1
    step = max(1, CHUNK_ELEMENTS // (n * (n + 2)))
    uniques, inverses = [], []
    for start in range(0, n, step):
        rows = colors[start : start + step]
        # codes[a, b, γ] = c(a, γ) * r + c(γ, b)
        codes = rows[:, None, :] * r + colors.T[None, :, :]
        codes.sort(axis=2)
        signature = np.concatenate(
            [rows[:, :, None], colors.T[start : start + step, :, None], codes], axis=2
        ).reshape(-1, n + 2)
        unique, inverse = np.unique(signature, axis=0, return_inverse=True)
        uniques.append(unique)
        inverses.append(inverse.reshape(-1))
    if len(uniques) == 1:
        return inverses[0].reshape(n, n).astype(np.int64)
    merged, relabel = np.unique(np.concatenate(uniques), axis=0, return_inverse=True)
    relabel = relabel.reshape(-1)
    result, offset = [], 0
    for unique, inverse in zip(uniques, inverses):
        result.append(relabel[offset + inverse])
        offset += len(unique)
    return np.concatenate(result).reshape(n, n).astype(np.int64)


def refine(colors: np.ndarray, split: bool = True) -> np.ndarray:
    """
    Iterate `refine_round` until the number of colours stops growing. The result is the coarsest coherent
    refinement of the input, with colour ids that depend only on the isomorphism type of the input colouring.

    Parameters:
        colors: Square colour matrix.
        split: Separate diagonal colours first.

    Returns:
        Stable colour matrix with dense ids.
    """
    current = split_diagonal(colors) if split else _dense_labels(np.asarray(colors, dtype=np.int64))
    count = int(current.max()) + 1
    rounds = 0
    while True:
        refined = refine_round(current)
        rounds += 1
        refined_count = int(refined.max()) + 1
        logger.debug(f"WL round {rounds}: {count} -> {refined_count} colours")
        if refined_count == count:
            return refined
        current, count = refined, refined_count


def individualize(colors: np.ndarray, point: int) -> np.ndarray:
    """
    Give the diagonal pair of one point a fresh colour.
    """
    result = np.array(colors, dtype=np.int64)
    result[point, point] = int(result.max()) + 1
    return result
