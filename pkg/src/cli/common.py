"""
Helpers shared by the subcommand modules
"""

import os
from typing import Any, Dict, List, Type, TypeVar

import numpy as np
import pandas as pd
from pydantic import BaseModel, ValidationError

from src.core.errors import ConfigurationError
from src.storage.files import load_config_document

M = TypeVar("M", bound=BaseModel)


def validate_config(model: Type[M], document: Dict[str, Any]) -> M:
    """pydantic validation with errors surfaced as ConfigurationError"""
    try:
        return model.model_validate(document)
    except ValidationError as e:
        problems = [f"{'.'.join(str(p) for p in d['loc'])}: {d['msg']}" for d in e.errors()]
        raise ConfigurationError(f"Invalid {model.__name__}", problems=problems)


def load_config(model: Type[M], source: str) -> M:
    return validate_config(model, load_config_document(source))


def output_path(output_dir: str, filename: str) -> str:
    return os.path.join(output_dir, filename)


def frame_from_columns(columns: Dict[str, np.ndarray]) -> pd.DataFrame:
    return pd.DataFrame({name: np.asarray(values, dtype=float) for name, values in columns.items()})


def finite_or_none(value: float):
    return float(value) if value is not None and np.isfinite(value) else None


def summary(command: str, outputs: List[str], **fields: Any) -> Dict[str, Any]:
    payload = {"command": command, "status": "ok"}
    payload.update(fields)
    payload["outputs"] = outputs
    return payload
