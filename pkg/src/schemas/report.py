"""
Error report schemas
"""

from typing import List

from pydantic import BaseModel, Field

from src.schemas.fit import GridSpec


class PointwiseError(BaseModel):
    x: float
    f: float
    q: float
    abs_err: float


class ErrorReport(BaseModel):
    """Pointwise, sup-norm and discrete L2 errors on a midpoint grid"""
    sup_error: float
    l2_error: float
    pointwise: List[PointwiseError]
    grid: GridSpec
    excluded_points: List[float] = Field(default_factory=list, description="Grid points where evaluation failed")

    @property
    def warning_count(self) -> int:
        return len(self.excluded_points)
