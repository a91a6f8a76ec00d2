from enum import Enum
from pydantic import BaseModel, Field, model_validator


class CandidateKind(str, Enum):
    """
    Isomorphism types of groups of order 4p² with a normal Sylow subgroup `C_p × C_p` and quotient
    `C_2 × C_2`.
    """

    cyclic_cyclic = "C2pxC2p"
    cyclic_dihedral = "C2pxD2p"
    dihedral_dihedral = "D2pxD2p"
    inverting = "Cp2_semidirect_C2_x_C2"


class GroupFile(BaseModel):
    """
    Serialized multiplication table of a finite group.
    """

    order: int = Field(..., gt=0, description="Number of elements.")
    label: str = Field("", description="Human-readable isomorphism-type tag.")
    table: list[int] = Field(..., description="Row-major product table, `table[x * order + y]` is the index of `xy`.")
    inverse: list[int] = Field(..., description="Index of the inverse of every element.")

    @model_validator(mode="after")
    def assure_table_is_square(self):
        if len(self.table) != self.order * self.order:
            e = f"Product table has {len(self.table)} entries, expected {self.order * self.order}."
            raise ValueError(e)
        if len(self.inverse) != self.order:
            e = f"Inverse array has {len(self.inverse)} entries, expected {self.order}."
            raise ValueError(e)
        return self
