from enum import Enum
from pathlib import Path
from typing import Optional
from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

DEFAULT_MAX_P = 13
DEFAULT_BUDGET = 200000
DEFAULT_SUBGROUPS = ((1, 0), (0, 1), (1, 1))
DEFAULT_INVOLUTIONS = ((1, 0), (0, 1), (1, 1))


class FusionLevel(str, Enum):
    """
    Fusions of the basic partition. A single index `i` keeps the cosets of the other two `X_j`, a pair
    `ij` keeps only the cosets of the remaining `X_k`, and `0` keeps only the cosets of `P`.
    """

    one = "1"
    two = "2"
    three = "3"
    one_two = "12"
    one_three = "13"
    two_three = "23"
    zero = "0"

    @property
    def kept(self) -> tuple[int, ...]:
        """
        Zero-based indices of the `X_i` whose cosets survive as basic sets.
        """
        if self == FusionLevel.zero:
            return ()
        merged = {int(c) - 1 for c in self.value}
        return tuple(i for i in range(3) if i not in merged)

    @property
    def merged(self) -> tuple[int, ...]:
        """
        Zero-based indices of the `X_i` whose cosets fuse into the full `P`-coset `Y_i`.
        """
        return tuple(i for i in range(3) if i not in self.kept)


class CheckName(str, Enum):
    """
    Named stages of the verification battery.
    """

    schur = "schur"
    ringproperties = "ringproperties"
    orderring = "orderring"
    fusionring = "fusionring"
    wl = "wl"
    schemeproperties = "schemeproperties"
    orderscheme = "orderscheme"
    fusionscheme = "fusionscheme"
    fixedpoint = "fixedpoint"
    semiregular = "semiregular"
    regular = "regular"
    nonschurian = "nonschurian"
    recognition = "recognition"
    cayleyiso = "cayleyiso"
    separability = "separability"


class RunConfig(BaseModel):
    """
    Settings for a single generation or verification run. Can be loaded from a TOML file and
    overridden from the command line.
    """

    p: Optional[int] = Field(None, description="Prime with 5 ≤ p ≤ `max_p`; optional only with a `source`.")
    max_p: int = Field(DEFAULT_MAX_P, description="Largest prime accepted without `override_max_p`.")
    override_max_p: bool = Field(False, description="Allow primes larger than `max_p`.")
    subgroups: tuple[tuple[int, int], tuple[int, int], tuple[int, int]] = Field(
        DEFAULT_SUBGROUPS, description="Direction vectors in Z_p² of the three order-p subgroups P_1, P_2, P_3."
    )
    involutions: tuple[tuple[int, int], tuple[int, int], tuple[int, int]] = Field(
        DEFAULT_INVOLUTIONS, description="The involutions a_1, a_2, a_3 of A as vectors in Z_2²."
    )
    directory: Optional[Path] = Field(None, description="Output directory for artifact files.")
    fusion: Optional[FusionLevel] = Field(None, description="Restrict to one fusion of the basic partition.")
    budget: int = Field(DEFAULT_BUDGET, gt=0, description="Node budget for every backtracking search.")
    lemma: Optional[CheckName] = Field(None, description="Run a single named verification stage.")
    source: Optional[Path] = Field(None, description="Input scheme file for standalone commands.")
    fusions: bool = Field(False, description="Also write every fusion partition and scheme.")

    @field_validator("p")
    @classmethod
    def assure_p_is_prime(cls, v: Optional[int]) -> Optional[int]:
        if v is None:
            return v
        if not isprime(v):
            e = f"p = {v} is not prime."
            raise ValueError(e)
        if v < 5:
            e = f"p = {v} is smaller than 5."
            raise ValueError(e)
        return v

    @model_validator(mode="after")
    def assure_choices_are_valid(self):
        if self.p is None:
            if self.source is None:
                e = "Set a prime `p`, or an input `source` scheme."
                raise ValueError(e)
            return self
        if self.p > self.max_p and not self.override_max_p:
            e = f"p = {self.p} exceeds the configured maximum {self.max_p}. Set `override_max_p`."
            raise ValueError(e)
        directions = [(x % self.p, y % self.p) for x, y in self.subgroups]
        for i in range(3):
            if directions[i] == (0, 0):
                e = f"Subgroup direction {self.subgroups[i]} is zero mod {self.p}."
                raise ValueError(e)
            for j in range(i):
                (x1, y1), (x2, y2) = directions[i], directions[j]
                if (x1 * y2 - x2 * y1) % self.p == 0:
                    e = f"Subgroup directions {self.subgroups[j]} and {self.subgroups[i]} span the same subgroup."
                    raise ValueError(e)
        involutions = sorted((x % 2, y % 2) for x, y in self.involutions)
        if involutions != [(0, 1), (1, 0), (1, 1)]:
            e = "Involutions must be the three nonzero vectors of Z_2², each used once."
            raise ValueError(e)
        return self
