"""
The base group `G = A × P` with `A ≅ C_2²` and `P ≅ C_p²`, together with the chosen involutions `a_i`,
order-p subgroups `P_i`, basic sets `X_i = P_i a_i` and cosets `Y_i = P a_i`.

Elements are encoded as `((α1 * 2 + α2) * p + β1) * p + β2` for `(α, β) ∈ Z_2² × Z_p²`, so `P` is the
block of indices `0..p²-1` and the identity is `0`.
"""

import logging
from dataclasses import dataclass

import numpy as np

from uhusiano.models.config import RunConfig, DEFAULT_MAX_P, DEFAULT_SUBGROUPS, DEFAULT_INVOLUTIONS
from uhusiano.groups.table import GroupTable, Subgroup, elementary_abelian_group

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True)
class PaperGroupBundle:
    p: int
    group: GroupTable
    A: Subgroup
    P: Subgroup
    a: tuple[int, int, int]
    Psub: tuple[Subgroup, Subgroup, Subgroup]
    X: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    Y: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def encode(self, alpha: Pair, beta: Pair) -> int:
        p = self.p
        return (((alpha[0] % 2) * 2 + alpha[1] % 2) * p + beta[0] % p) * p + beta[1] % p

    def decode(self, x: int) -> tuple[Pair, Pair]:
        p = self.p
        rest, b2 = divmod(int(x), p)
        rest, b1 = divmod(rest, p)
        a1, a2 = divmod(rest, 2)
        return (a1, a2), (b1, b2)

    def coset_index(self, x: int) -> int:
        """
        Which of `P, Y_1, Y_2, Y_3` holds `x`: `0` for `P`, otherwise `i + 1`.
        """
        block = int(x) // (self.p * self.p)
        if block == 0:
            return 0
        for i, ai in enumerate(self.a):
            if ai // (self.p * self.p) == block:
                return i + 1
        e = f"Element {x} is outside G."
        raise ValueError(e)

    def verify(self) -> bool:
        """
        Check the defining relations of the bundle.

        Raises:
            ValueError: naming the first relation that fails.
        """
        g = self.group
        if g.multiply(self.a[0], self.a[1]) != self.a[2]:
            e = "a_1 a_2 != a_3."
            raise ValueError(e)
        for i in range(3):
            for j in range(i):
                if self.Psub[i].intersection(self.Psub[j]).order != 1:
                    e = f"P_{j + 1} and P_{i + 1} meet nontrivially."
                    raise ValueError(e)
            Xi = np.array(self.X[i])
            if len(Xi) != self.p or sorted(g.inverse[Xi].tolist()) != list(self.X[i]):
                e = f"X_{i + 1} is not an inverse-closed set of size p."
                raise ValueError(e)
            union = np.unique(g.product[np.ix_(Xi, np.array(self.P.elements))])
            if tuple(union.tolist()) != self.Y[i]:
                e = f"Y_{i + 1} is not the union of the X_{i + 1}-translates."
                raise ValueError(e)
        return True


def build_paper_group(
    p: int,
    subgroups: tuple[Pair, Pair, Pair] = DEFAULT_SUBGROUPS,
    involutions: tuple[Pair, Pair, Pair] = DEFAULT_INVOLUTIONS,
    max_p: int = DEFAULT_MAX_P,
    override_max_p: bool = False,
) -> PaperGroupBundle:
    """
    Build `G = C_2² × C_p²` with its distinguished subgroups and basic sets.

    Parameters:
        p: Prime with 5 ≤ p ≤ `max_p`.
        subgroups: Direction vectors in Z_p² spanning `P_1, P_2, P_3`.
        involutions: Vectors in Z_2² giving `a_1, a_2, a_3`.
        max_p: Largest prime accepted without `override_max_p`.
        override_max_p: Allow larger primes.

    Raises:
        ValueError: for a non-prime or out-of-range `p`, or degenerate choices.

    Returns:
        PaperGroupBundle
    """
    config = RunConfig(
        p=p, subgroups=subgroups, involutions=involutions, max_p=max_p, override_max_p=override_max_p
    )
    group = elementary_abelian_group(2, 2).direct_product(elementary_abelian_group(p, 2), label=f"C2xC2xC{p}xC{p}")
    q = p * p
    A = Subgroup(group, tuple(range(0, 4 * q, q)))
    P = Subgroup(group, tuple(range(q)))
    a = tuple(((x % 2) * 2 + y % 2) * q for x, y in config.involutions)
    Psub = tuple(Subgroup(group, tuple(((k * x) % p) * p + (k * y) % p for k in range(p))) for x, y in config.subgroups)
    X = tuple(tuple(sorted(group.multiply(x, ai) for x in Pi.elements)) for Pi, ai in zip(Psub, a))
    Y = tuple(tuple(sorted(group.multiply(x, ai) for x in P.elements)) for ai in a)
    bundle = PaperGroupBundle(p=p, group=group, A=A, P=P, a=a, Psub=Psub, X=X, Y=Y)
    bundle.verify()
    logger.info(f"Built G of order {group.order} for p = {p}")
    return bundle


def paper_group_automorphism(bundle: PaperGroupBundle, a_matrix: np.ndarray, p_matrix: np.ndarray) -> np.ndarray:
    """
    The automorphism `(α, β) ↦ (Mα mod 2, Nβ mod p)` of `G` as an image array.

    Parameters:
        bundle: The base group.
        a_matrix: Invertible 2×2 matrix `M` over Z_2.
        p_matrix: Invertible 2×2 matrix `N` over Z_p.

    Raises:
        ValueError: if either matrix is singular.

    Returns:
        Array `f` with `f[x]` the image of `x`.
    """
    p = bundle.p
    M = np.asarray(a_matrix, dtype=np.int64) % 2
    N = np.asarray(p_matrix, dtype=np.int64) % p
    if (M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % 2 == 0:
        e = "Matrix over Z_2 is singular."
        raise ValueError(e)
    if (N[0, 0] * N[1, 1] - N[0, 1] * N[1, 0]) % p == 0:
        e = f"Matrix over Z_{p} is singular."
        raise ValueError(e)
    x = np.arange(bundle.group.order)
    rest, b2 = np.divmod(x, p)
    rest, b1 = np.divmod(rest, p)
    a1, a2 = np.divmod(rest, 2)
    c1, c2 = (M[0, 0] * a1 + M[0, 1] * a2) % 2, (M[1, 0] * a1 + M[1, 1] * a2) % 2
    d1, d2 = (N[0, 0] * b1 + N[0, 1] * b2) % p, (N[1, 0] * b1 + N[1, 1] * b2) % p
    return ((c1 * 2 + c2) * p + d1) * p + d2
