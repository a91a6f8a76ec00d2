from enum import Enum
from typing import Optional
from pydantic import BaseModel, Field, SerializeAsAny, computed_field


class CheckResult(BaseModel):
    """
    A single verified (or refuted) statement.
    """

    name: str = Field(..., description="Short identifier of the checked statement.")
    passed: bool = Field(..., description="Whether the statement holds.")
    detail: str = Field("", description="Observed values, or the violation found.")


class Report(BaseModel):
    """
    A list of checks. Failing mathematics is recorded here, never raised.
    """

    checks: list[CheckResult] = Field(default_factory=list, description="Checks in the order they were run.")

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))
        return bool(passed)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Optional[CheckResult]:
        for check in self.checks:
            if check.name == name:
                return check
        return None


class GroupReport(Report):
    """
    Group axioms checked exhaustively on a multiplication table.
    """


class SchurReport(Report):
    """
    Schur partition axioms: identity singleton, inverse closure, product closure, commutativity.
    """

    commutative: bool = Field(False, description="Whether every structure constant is symmetric in its two inputs.")


class ProductFactor(BaseModel):
    """
    One factor of a recognized tensor or wreath decomposition.
    """

    kind: str = Field(..., description="`wreath` or `regular`.")
    order: int = Field(..., description="Order of the subgroup carrying the factor.")
    base_order: Optional[int] = Field(None, description="Order of the wreath base subgroup.")
    base_rank: Optional[int] = Field(None, description="Number of basic sets inside the base subgroup.")
    top_rank: Optional[int] = Field(None, description="Rank of the quotient partition over the base subgroup.")


class StructureReport(Report):
    """
    Tensor and wreath structure recognized in a fusion partition.
    """

    kind: str = Field("unknown", description="`tensor`, `wreath` or `unknown`.")
    factors: list[ProductFactor] = Field(default_factory=list, description="Recognized factors.")


class SearchStatus(str, Enum):
    """
    Outcome of an exhaustive search. `inconclusive` only ever means the node budget ran out.
    """

    found = "found"
    none = "none"
    inconclusive = "inconclusive"


class AuditWitness(BaseModel):
    """
    An algebraic automorphism together with the point map inducing it.
    """

    phi: list[int] = Field(..., description="Colour image array.")
    point_map: Optional[list[int]] = Field(None, description="Point image array, absent if none was found.")
    status: SearchStatus = Field(..., description="Outcome of the inducing search.")


class AuditReport(Report):
    """
    Separability audit over every algebraic automorphism of a scheme's tensor.
    """

    scheme_ref: str = Field("", description="Name of the audited scheme.")
    algebraic_automorphism_count: int = Field(0, description="Number of algebraic automorphisms enumerated.")
    induced_count: int = Field(0, description="Number found to be induced by a point bijection.")
    inconclusive_count: int = Field(0, description="Number whose search exhausted the node budget.")
    searched_count: int = Field(0, description="Number of inducing searches run. The rest follow by composition.")
    witnesses: list[AuditWitness] = Field(default_factory=list, description="One entry per algebraic automorphism.")

    @property
    def failure_count(self) -> int:
        return self.algebraic_automorphism_count - self.induced_count - self.inconclusive_count


class RecognitionReport(Report):
    """
    Recovery of the regular group of a scheme, and its classification among the candidates.
    """

    label: Optional[str] = Field(None, description="Matched candidate kind, if any.")
    census: dict[int, int] = Field(default_factory=dict, description="Element order census of the recovered group.")
    involutions: int = Field(0, description="Number of elements of order 2.")


class StageTiming(BaseModel):
    """
    Wall time for one verification stage.
    """

    stage: str
    seconds: float


class VerifyReport(Report):
    """
    Result of the verification battery.
    """

    version: str = Field(..., description="Package version that produced the report.")
    config: dict = Field(default_factory=dict, description="Effective run configuration.")
    stages: dict[str, SerializeAsAny[Report]] = Field(
        default_factory=dict, description="Sub-reports, keyed by check name."
    )
    inconclusive: bool = Field(False, description="Whether any search exhausted its budget.")
    schurian: Optional[bool] = Field(None, description="Observed schurity of the verified scheme.")
    audit_failures: Optional[int] = Field(None, description="Algebraic automorphisms not induced.")
    timing: list[StageTiming] = Field(
        default_factory=list, description="Wall time per stage, construction stages included."
    )
