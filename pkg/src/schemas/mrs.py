"""
Potential theory result schemas
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field


class MrsResult(BaseModel):
    """Solution of an MRS or endpoint-localization equation"""
    a_n: float = Field(..., gt=0, description="Interval endpoint")
    method: Literal["closed_form", "numeric"]
    residual: Optional[float] = Field(None, description="|LHS - RHS| for numeric solves")


class RestrictedRangeReport(BaseModel):
    """Weighted sup norms inside and outside [-a, a]"""
    a: float
    sup_inside: float
    sup_outside: float
    holds: bool
    argmax_inside: float = Field(..., description="Grid point attaining sup_inside")
    tail_ratio: float = Field(..., description="max |p w| at |x| = 10a divided by sup_inside")
