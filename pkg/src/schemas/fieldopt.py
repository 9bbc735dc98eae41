"""
External-field search schemas
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from src.core.config import settings
from src.schemas.fit import FitConfig, FitResult


class FieldSearchConfig(BaseModel):
    """Grid-and-refine search over the one-sided field exp(-c x^n)"""
    template: FitConfig = Field(..., description="Inner training config; its weight is replaced per (c, n)")
    c_range: Tuple[float, float] = (0.25, 4.0)
    n_range: Tuple[float, float] = (1.25, 4.0)
    coarse_c: int = Field(5, ge=1)
    coarse_n: int = Field(5, ge=1)
    refinement_rounds: int = Field(2, ge=0)
    search_restarts: int = Field(default_factory=lambda: settings.search_restarts, ge=1)
    search_max_iters: int = Field(default_factory=lambda: settings.search_max_iters, ge=1)

    @model_validator(mode="after")
    def _check_ranges(self):
        c_lo, c_hi = self.c_range
        n_lo, n_hi = self.n_range
        if not (0 < c_lo <= c_hi):
            raise ValueError(f"c_range must satisfy 0 < c_lo <= c_hi, got {self.c_range}")
        if not (1 < n_lo <= n_hi):
            raise ValueError(f"n_range must satisfy 1 < n_lo <= n_hi, got {self.n_range}")
        return self


class FieldEvaluation(BaseModel):
    """One inner training run at a fixed (c, n)"""
    c: float
    n: float
    loss: Optional[float] = Field(None, description="None when every inner restart diverged")
    sup_error: Optional[float] = None
    round: int
    admissible: bool


class FieldSearchResult(BaseModel):
    best_c: float
    best_n: float
    best_loss: float = Field(..., description="Search-budget objective at the incumbent")
    baseline_loss: Optional[float] = Field(None, description="Search-budget objective at (1, 2) when evaluated")
    round_best: List[float] = Field(..., description="Incumbent objective after the coarse pass and each round")
    best_fit: FitResult
    baseline_fit: Optional[FitResult] = None
    grid_log: List[FieldEvaluation]
