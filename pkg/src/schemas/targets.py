"""
Target function schemas
"""

import math
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from src.core.errors import ConfigurationError

TargetKind = Literal["exp_neg", "airy_bi_neg", "abs", "root", "log_pos", "custom"]


class TargetSpec(BaseModel):
    """A function to approximate"""
    kind: TargetKind = Field(..., description="Target family")
    p: Optional[int] = Field(None, ge=2, description="Root order for x^(1/p)")
    path: Optional[str] = Field(None, description="CSV with columns x,f for tabulated targets")

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_parameters(self):
        if self.kind == "root" and self.p is None:
            raise ValueError("root target requires p")
        if self.kind == "custom" and not self.path:
            raise ValueError("custom target requires path")
        return self

    @property
    def domain(self) -> Tuple[float, float]:
        """Closed-form natural domain; tabulated targets report their table range at load time"""
        if self.kind == "root":
            return (0.0, math.inf)
        if self.kind == "log_pos":
            return (0.0, math.inf)
        return (-math.inf, math.inf)

    @property
    def open_left(self) -> bool:
        return self.kind == "log_pos"

    @classmethod
    def parse(cls, name: str) -> "TargetSpec":
        """Parse a CLI target name: exp-neg, airy-bi-neg, abs, root:<p>, log, table:<path>."""
        name = name.strip()
        simple = {"exp-neg": "exp_neg", "airy-bi-neg": "airy_bi_neg", "abs": "abs", "log": "log_pos"}
        if name in simple:
            return cls(kind=simple[name])
        if name.startswith("root:"):
            try:
                return cls(kind="root", p=int(name.split(":", 1)[1]))
            except ValueError as e:
                raise ConfigurationError(f"Invalid target '{name}': {e}")
        if name.startswith("table:"):
            return cls(kind="custom", path=name.split(":", 1)[1])
        raise ConfigurationError(f"Unknown target '{name}'")

    def label(self) -> str:
        if self.kind == "root":
            return f"root:{self.p}"
        if self.kind == "custom":
            return f"table:{self.path}"
        return {"exp_neg": "exp-neg", "airy_bi_neg": "airy-bi-neg", "abs": "abs", "log_pos": "log"}[self.kind]
