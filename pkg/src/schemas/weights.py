"""
Weight and external-field schemas
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from src.core.errors import ConfigurationError

WeightKind = Literal[
    "one_sided_gaussian",
    "one_sided_reciprocal",
    "freud",
    "general_field",
    "one_sided_field",
    "constant",
]


class FieldSpec(BaseModel):
    """External field Q(x) = c|x|^n with weight exp(-Q)"""
    c: float = Field(..., gt=0, description="Field scale")
    n: float = Field(..., gt=1, description="Field exponent")

    class Config:
        frozen = True


class WeightSpec(BaseModel):
    """A weight function w: R -> (0, 1]"""
    kind: WeightKind = Field(..., description="Weight family")
    lam: Optional[float] = Field(None, ge=1, description="Freud exponent lambda")
    field: Optional[FieldSpec] = Field(None, description="External field for field kinds")

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_parameters(self):
        if self.kind == "freud" and self.lam is None:
            raise ValueError("freud weight requires lam")
        if self.kind in ("general_field", "one_sided_field") and self.field is None:
            raise ValueError(f"{self.kind} weight requires field")
        return self

    @property
    def one_sided(self) -> bool:
        return self.kind in ("one_sided_gaussian", "one_sided_reciprocal", "one_sided_field")

    @classmethod
    def parse(cls, name: str) -> "WeightSpec":
        """Parse a CLI weight name: gauss-right, recip-right, freud:<l>, field:<c>:<n>,
        field-right:<c>:<n>, const."""
        parts = name.strip().split(":")
        head = parts[0]
        try:
            if head == "gauss-right" and len(parts) == 1:
                return cls(kind="one_sided_gaussian")
            if head == "recip-right" and len(parts) == 1:
                return cls(kind="one_sided_reciprocal")
            if head == "const" and len(parts) == 1:
                return cls(kind="constant")
            if head == "freud" and len(parts) == 2:
                return cls(kind="freud", lam=float(parts[1]))
            if head in ("field", "field-right") and len(parts) == 3:
                kind = "general_field" if head == "field" else "one_sided_field"
                return cls(kind=kind, field=FieldSpec(c=float(parts[1]), n=float(parts[2])))
        except ValueError as e:
            raise ConfigurationError(f"Invalid weight '{name}': {e}")
        raise ConfigurationError(f"Unknown weight '{name}'")

    def label(self) -> str:
        """Inverse of parse"""
        if self.kind == "one_sided_gaussian":
            return "gauss-right"
        if self.kind == "one_sided_reciprocal":
            return "recip-right"
        if self.kind == "constant":
            return "const"
        if self.kind == "freud":
            return f"freud:{self.lam!r}"
        head = "field" if self.kind == "general_field" else "field-right"
        return f"{head}:{self.field.c!r}:{self.field.n!r}"


class AdmissibilityReport(BaseModel):
    """Outcome of the external-field admissibility conditions (a)-(c)"""
    condition_a: bool = Field(..., description="Q' > 0 on (0, inf)")
    condition_b: bool = Field(..., description="xQ'(x) strictly increasing with limit 0 at 0+")
    condition_c: bool = Field(..., description="xQ'(x)/Q(x) asymptotically constant")
    ratio_limit: float = Field(..., description="Limit of xQ'(x)/Q(x)")
    method: Literal["analytic", "sampled"] = "analytic"

    @property
    def admissible(self) -> bool:
        return self.condition_a and self.condition_b and self.condition_c
