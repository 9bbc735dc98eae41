"""
Classical baseline model schemas
"""

from typing import List, Tuple

from pydantic import BaseModel, Field


class ChebModel(BaseModel):
    """Chebyshev series on [a, b], evaluated through the affine map to [-1, 1]"""
    interval: Tuple[float, float]
    coeffs: List[float] = Field(..., min_length=1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def dof(self) -> int:
        return len(self.coeffs)


class TaylorModel(BaseModel):
    """Truncated Taylor expansion sum_k coeffs[k] (x - center)^k"""
    center: float
    coeffs: List[float] = Field(..., min_length=1)

    @property
    def dof(self) -> int:
        return len(self.coeffs)
