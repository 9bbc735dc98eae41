"""
Training configuration and result schemas
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_serializer, field_validator, model_validator

from src.core.config import settings
from src.schemas.graph import GraphConfig
from src.schemas.targets import TargetSpec
from src.schemas.weights import WeightSpec


class GridSpec(BaseModel):
    """Midpoint sampling grid description"""
    interval: Tuple[float, float]
    samples: int = Field(..., ge=2)


class FitConfig(BaseModel):
    """Hyperparameters of restarted gradient-descent training"""
    interval: Tuple[float, float] = Field(..., description="Approximation interval [a, b]")
    samples: int = Field(default_factory=lambda: settings.default_samples, ge=2)
    widths: List[int] = Field(..., description="Layer widths")
    gamma: float = Field(1.0, ge=0, description="Weight exponent")
    restarts: int = Field(default_factory=lambda: settings.default_restarts, ge=1)
    step: float = Field(default_factory=lambda: settings.default_step, gt=0)
    rel_tol: float = Field(default_factory=lambda: settings.default_rel_tol, gt=0)
    max_iters: int = Field(default_factory=lambda: settings.default_max_iters, ge=1)
    seed: int = Field(default_factory=lambda: settings.default_seed)
    target: TargetSpec
    weight: WeightSpec = Field(default_factory=lambda: WeightSpec(kind="one_sided_gaussian"))

    class Config:
        frozen = True

    @field_validator("target", mode="before")
    @classmethod
    def _parse_target(cls, value):
        return TargetSpec.parse(value) if isinstance(value, str) else value

    @field_validator("weight", mode="before")
    @classmethod
    def _parse_weight(cls, value):
        return WeightSpec.parse(value) if isinstance(value, str) else value

    @field_serializer("target")
    def _target_label(self, target: TargetSpec) -> str:
        return target.label()

    @field_serializer("weight")
    def _weight_label(self, weight: WeightSpec) -> str:
        return weight.label()

    @model_validator(mode="after")
    def _check_interval(self):
        if not self.interval[0] < self.interval[1]:
            raise ValueError(f"interval must satisfy a < b, got {self.interval}")
        return self

    @property
    def graph_config(self) -> GraphConfig:
        return GraphConfig(widths=self.widths, gamma=self.gamma, weight=self.weight)


class RestartLog(BaseModel):
    """Outcome of one restart"""
    restart: int
    seed: int
    final_loss: Optional[float] = Field(None, description="None when the restart diverged")
    iterations: int = 0
    redraws: int = 0
    status: Literal["converged", "max_iters", "stalled", "diverged"]


class FitResult(BaseModel):
    """Best parameters over all restarts, with error diagnostics"""
    theta_star: List[float]
    loss_star: float = Field(..., ge=0)
    restarts_log: List[RestartLog]
    iterations_used: List[int]
    best_loss_trace: List[Optional[float]] = Field(..., description="Best-so-far loss after each restart")
    sup_error: float
    grid: GridSpec
    config: FitConfig
    n_deep: int
    classic_dof: Optional[int] = Field(None, description="d_1+...+d_L-L+2 when every layer has degree >= 1")
    composite_degree: int
