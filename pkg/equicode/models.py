"""
Record types shared by the library, the CLI and the HTTP front end.

Built with Pydantic for validation and JSON serialization.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Report(BaseModel):
    """Outcome of one executable identity check.

    `passed` serializes as "pass". Verification drivers return a failed
    Report instead of raising; `witness` names the first disagreement.
    """

    flavor: str = Field(description="Name of the checked identity")
    passed: bool = Field(alias="pass", description="True iff both sides agree exactly")
    lhs: Any = Field(default=None, description="Left-hand side, JSON-ready")
    rhs: Any = Field(default=None, description="Right-hand side, JSON-ready")
    witness: Optional[Any] = Field(default=None, description="First point of disagreement")
    details: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    def to_json(self) -> Dict[str, Any]:
        data = self.model_dump(by_alias=True)
        if data["witness"] is None:
            del data["witness"]
        return data


class CodeSpec(BaseModel):
    """JSON code spec: {"modulus": k, "length": n, "generators": [[...], ...]}."""

    modulus: int = Field(ge=2)
    length: int = Field(ge=1)
    generators: List[List[int]] = Field(default_factory=list)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def generators_have_length(self):
        for row in self.generators:
            if len(row) != self.length:
                raise ValueError(f"generator {row} does not have length {self.length}")
        return self


class ProblemSpec(CodeSpec):
    """A code together with its acting group and the options of the checks."""

    group: List[str] = Field(default_factory=list, description="Generators in cycle notation")
    subgroup: Optional[List[str]] = Field(default=None, description="Defaults to the whole group")
    genus: int = Field(default=2, ge=1, le=3)
    jacobi_set: List[int] = Field(default_factory=lambda: [1], description="1-based orbit places")
    harmonic: Optional[Dict[str, Any]] = Field(default=None, description="HarmonicFn JSON")
    harmonic_degree: int = Field(default=1, ge=0)

    @field_validator("jacobi_set")
    @classmethod
    def places_positive(cls, v):
        if any(p < 1 for p in v):
            raise ValueError("jacobi_set places are 1-based")
        return sorted(set(v))


class SweepSummary(BaseModel):
    """Totals of one verification sweep."""

    check: str
    seed: int
    requested: int = 0
    instances: int = 0
    passed: int = 0
    skipped: int = 0
    elapsed_seconds: float = 0.0
    per_modulus: Dict[int, int] = Field(default_factory=dict)
    first_failure: Optional[Dict[str, Any]] = None

    @property
    def all_passed(self) -> bool:
        return self.passed == self.instances
