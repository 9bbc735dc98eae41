"""
Extended-precision reference table for Bi(x)
"""

import os

import mpmath as mp
import numpy as np
import pandas as pd
import structlog

from src.core.config import settings
from src.core.errors import InputFileError
from src.models.airy import WINDOW
from src.storage.files import write_csv

logger = structlog.get_logger(__name__)


def golden_points(step: float = None) -> np.ndarray:
    step = step or settings.golden_step
    lo, hi = WINDOW
    count = int(round((hi - lo) / step)) + 1
    return np.linspace(lo, hi, count)


def generate_airy_golden(path: str, step: float = None, dps: int = None) -> pd.DataFrame:
    """Tabulate Bi on the evaluator window with mpmath at `dps` digits, written as x,bi_x"""
    dps = dps or settings.golden_dps
    x = golden_points(step)
    with mp.workdps(dps):
        values = [float(mp.airybi(mp.mpf(float(xi)))) for xi in x]
    frame = pd.DataFrame({"x": x, "bi_x": values})
    write_csv(frame, path)
    logger.info("Generated Airy golden table", path=path, rows=len(frame), dps=dps)
    return frame


def load_golden(path: str) -> pd.DataFrame:
    if not os.path.exists(path):
        raise InputFileError(f"Golden table not found: {path}", path=path)
    frame = pd.read_csv(path, float_precision="round_trip")
    if list(frame.columns) != ["x", "bi_x"]:
        raise InputFileError(f"Golden table {path} must have columns x,bi_x", path=path)
    return frame
