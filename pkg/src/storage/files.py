"""
Output directory handling and JSON/CSV persistence
"""

import json
import os
from typing import Any, Dict, Optional, Type

import pandas as pd
import structlog
from pydantic import BaseModel, ValidationError

from src.core.config import settings
from src.core.errors import ConfigurationError, DeepPolyError, InputFileError
from src.schemas.fit import FitResult

logger = structlog.get_logger(__name__)

FLOAT_FORMAT = "%.17g"


def resolve_output_dir(override: Optional[str] = None) -> str:
    """Output directory: explicit override, else DEEPPOLY_OUTPUT_DIR / settings.output_dir. Created if missing."""
    path = override or settings.output_dir
    os.makedirs(path, exist_ok=True)
    return path


def write_json(payload: Any, path: str) -> str:
    """
    Save a model or plain mapping as JSON.

    Floats are written with repr, which round-trips every double exactly.

    Args:
        payload: pydantic model or JSON-serializable object
        path: Destination file

    Raises:
        OSError: If the file cannot be written
    """
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    try:
        with open(path, "w") as file:
            json.dump(payload, file, indent=4)
    except OSError as e:
        logger.error("Failed to write JSON", path=path, error=str(e))
        raise
    logger.info("Wrote JSON", path=path)
    return path


def write_csv(frame: pd.DataFrame, path: str) -> str:
    """Save a frame without its index, numbers at 17 significant digits."""
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as e:
        logger.error("Failed to write CSV", path=path, error=str(e))
        raise
    logger.info("Wrote CSV", path=path, rows=len(frame))
    return path


def read_json(path: str, malformed: Type[DeepPolyError] = InputFileError) -> Dict[str, Any]:
    if not os.path.exists(path):
        raise InputFileError(f"File not found: {path}", path=path)
    try:
        with open(path) as file:
            return json.load(file)
    except json.JSONDecodeError as e:
        raise malformed(f"Malformed JSON in {path}: {e}", path=path)
    except OSError as e:
        raise InputFileError(f"Cannot read {path}: {e}", path=path)


def load_config_document(source: str) -> Dict[str, Any]:
    """A JSON config given either inline or as a path to a file."""
    text = source.strip()
    if text.startswith("{"):
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Malformed inline JSON config: {e}")
    else:
        document = read_json(source, malformed=ConfigurationError)
    if not isinstance(document, dict):
        raise ConfigurationError("Config must be a JSON object")
    return document


def read_fit_result(path: str) -> FitResult:
    """Re-read a FitResult written by write_json; theta_star comes back bit-identical."""
    try:
        return FitResult.model_validate(read_json(path))
    except ValidationError as e:
        raise InputFileError(f"{path} is not a fit result: {e.error_count()} validation errors", path=path)
