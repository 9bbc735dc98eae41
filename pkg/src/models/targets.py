"""
Target functions and their derivatives
"""

import os
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
import pandas as pd
import structlog
from scipy.interpolate import CubicSpline

from src.core.errors import DomainError, InputFileError, UnsupportedError
from src.models.airy import WINDOW, airy_bi, airy_bi_prime
from src.schemas.targets import TargetSpec

logger = structlog.get_logger(__name__)

ArrayLike = Union[float, np.ndarray]


@lru_cache(maxsize=16)
def _load_table(path: str) -> Tuple[CubicSpline, float, float]:
    if not os.path.exists(path):
        raise InputFileError(f"Target table not found: {path}", path=path)
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
        frame = frame.sort_values("x")
        x = frame["x"].to_numpy(dtype=float)
        f = frame["f"].to_numpy(dtype=float)
    except (KeyError, ValueError, pd.errors.ParserError) as e:
        raise InputFileError(f"Target table {path} needs numeric columns x,f: {e}", path=path)
    if x.size < 2:
        raise InputFileError(f"Target table {path} needs at least two rows", path=path)
    logger.info("Loaded target table", path=path, rows=int(x.size))
    return CubicSpline(x, f), float(x[0]), float(x[-1])


def domain(spec: TargetSpec) -> Tuple[float, float]:
    """Closed domain bounds; log_pos excludes its left endpoint"""
    if spec.kind == "airy_bi_neg":
        return (-WINDOW[1], -WINDOW[0])
    if spec.kind == "custom":
        _, lo, hi = _load_table(spec.path)
        return (lo, hi)
    return spec.domain


def _check_domain(spec: TargetSpec, arr: np.ndarray) -> None:
    lo, hi = domain(spec)
    inside = (arr >= lo) & (arr <= hi)
    if spec.open_left:
        inside &= arr > lo
    if not np.all(inside):
        bad = arr[~inside]
        raise DomainError(f"Target {spec.label()} is undefined at {bad[:5].tolist()}", domain=[lo, hi])


def evaluate_target(spec: TargetSpec, x: ArrayLike) -> ArrayLike:
    """f(x) for the given target; raises DomainError outside its declared domain"""
    arr = np.asarray(x, dtype=float)
    _check_domain(spec, arr)
    kind = spec.kind
    if kind == "exp_neg":
        out = np.exp(-arr)
    elif kind == "airy_bi_neg":
        out = np.asarray(airy_bi(-arr))
    elif kind == "abs":
        out = np.abs(arr)
    elif kind == "root":
        out = np.power(arr, 1.0 / spec.p)
    elif kind == "log_pos":
        out = np.log(arr)
    else:
        spline, _, _ = _load_table(spec.path)
        out = spline(arr)
    return float(out) if arr.ndim == 0 else out


def derivatives(spec: TargetSpec, x0: float, count: int) -> np.ndarray:
    """f(x0), f'(x0), ..., f^(count-1)(x0) for targets with closed-form derivatives"""
    if count < 1:
        raise UnsupportedError("Need at least one derivative value")
    if spec.kind == "exp_neg":
        signs = (-1.0) ** np.arange(count)
        return signs * np.exp(-x0)
    if spec.kind == "airy_bi_neg":
        # Bi'' = t Bi, so Bi^(k+2)(t) = t Bi^(k)(t) + k Bi^(k-1)(t); f(x) = Bi(-x)
        t = -x0
        values = [airy_bi(t), airy_bi_prime(t)]
        while len(values) < count:
            k = len(values) - 2
            previous = values[k - 1] if k >= 1 else 0.0
            values.append(t * values[k] + k * previous)
        values = np.asarray(values[:count])
        return values * (-1.0) ** np.arange(count)
    raise UnsupportedError(f"Target {spec.label()} has no closed-form derivatives", target=spec.label())
