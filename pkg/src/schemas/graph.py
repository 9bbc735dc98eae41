"""
Computational graph configuration schema
"""

from typing import List

from pydantic import BaseModel, Field, field_serializer, field_validator

from src.schemas.weights import WeightSpec


class GraphConfig(BaseModel):
    """Layer widths, weight exponent and weight of a deep weighted polynomial"""
    widths: List[int] = Field(..., description="Coefficients per layer (w_1, ..., w_L)")
    gamma: float = Field(0.0, ge=0, description="Exponent on the weight")
    weight: WeightSpec = Field(default_factory=lambda: WeightSpec(kind="constant"))

    class Config:
        frozen = True

    @field_validator("weight", mode="before")
    @classmethod
    def _parse_weight(cls, value):
        return WeightSpec.parse(value) if isinstance(value, str) else value

    @field_serializer("weight")
    def _weight_label(self, weight: WeightSpec) -> str:
        return weight.label()
