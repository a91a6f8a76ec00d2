from enum import Enum
from pydantic import BaseModel, Field, field_validator


class Regularity(str, Enum):
    """
    Classification of a permutation group by its point stabilizers and orbits.
    """

    regular = "regular"
    semiregular_intransitive = "semiregular-intransitive"
    transitive_nonregular = "transitive-nonregular"
    other = "other"


class PermGroupFile(BaseModel):
    """
    Serialized permutation group. The order is a decimal string since it overflows 32 bits for p ≥ 7.
    """

    degree: int = Field(..., gt=0, description="Number of points moved.")
    order: str = Field(..., description="Exact group order as a decimal string.")
    generators: list[list[int]] = Field(..., description="Generators as image arrays.")

    @field_validator("order")
    @classmethod
    def assure_order_is_decimal(cls, v: str) -> str:
        if not v.isdigit():
            e = f"Order `{v}` is not a decimal integer."
            raise ValueError(e)
        return v
