from typing import Optional
from pydantic import BaseModel, Field, model_validator


class PartitionFile(BaseModel):
    """
    Serialized partition of a group into basic sets.
    """

    group_ref: str = Field(..., description="File name (or label) of the underlying group.")
    sets: list[list[int]] = Field(..., description="Basic sets as sorted element arrays, in canonical order.")


class ConstantsFile(BaseModel):
    """
    Serialized structure constants of a Schur partition, as sorted `[X, Y, Z, c]` quadruples.
    """

    partition_ref: str = Field(..., description="File name of the partition.")
    entries: list[tuple[int, int, int, int]] = Field(..., description="Nonzero constants, lexicographically sorted.")


class SchemeFile(BaseModel):
    """
    Serialized colour partition of `Ω × Ω`.
    """

    degree: int = Field(..., gt=0, description="Number of points.")
    rank: int = Field(..., gt=0, description="Number of colours.")
    colors: list[int] = Field(..., description="Row-major colour matrix.")

    @model_validator(mode="after")
    def assure_colors_are_complete(self):
        if len(self.colors) != self.degree * self.degree:
            e = f"Colour matrix has {len(self.colors)} entries, expected {self.degree * self.degree}."
            raise ValueError(e)
        if self.colors and (min(self.colors) < 0 or max(self.colors) >= self.rank):
            e = f"Colours must lie in 0..{self.rank - 1}."
            raise ValueError(e)
        return self


class TensorFile(BaseModel):
    """
    Serialized intersection numbers of a coherent configuration.
    """

    rank: int = Field(..., gt=0, description="Number of colours.")
    valencies: list[int] = Field(..., description="Valency of every colour.")
    transpose: list[int] = Field(..., description="Colour of the transposed relation.")
    entries: list[tuple[int, int, int, int]] = Field(..., description="Nonzero `[s, t, u, c]`, sorted.")
    scheme_ref: Optional[str] = Field(None, description="File name of the source scheme.")

    @model_validator(mode="after")
    def assure_arrays_match_rank(self):
        if len(self.valencies) != self.rank or len(self.transpose) != self.rank:
            e = "Valency and transpose arrays must have one entry per colour."
            raise ValueError(e)
        return self
