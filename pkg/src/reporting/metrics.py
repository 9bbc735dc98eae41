"""
Error metrics of an approximant against a target on a midpoint grid
"""

import math
from typing import Callable, Sequence, Tuple, Union

import numpy as np
import structlog
from numpy.polynomial import polynomial

from src.core.errors import DeepPolyError, DomainError, EvaluationError
from src.models.targets import evaluate_target
from src.schemas.fit import GridSpec
from src.schemas.report import ErrorReport, PointwiseError
from src.schemas.targets import TargetSpec
from src.solvers.fitting import sample_grid

logger = structlog.get_logger(__name__)

Evaluable = Callable[[np.ndarray], np.ndarray]


def _as_callable(target: Union[TargetSpec, Evaluable]) -> Evaluable:
    if isinstance(target, TargetSpec):
        return lambda x: evaluate_target(target, x)
    return target


def _evaluate_pointwise(fn: Evaluable, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Values and an ok-mask; falls back to one point at a time when the batch fails"""
    try:
        with np.errstate(all="ignore"):
            values = np.asarray(fn(points), dtype=float).reshape(points.shape)
        return values, np.isfinite(values)
    except (DeepPolyError, ArithmeticError, ValueError):
        pass
    values = np.full(points.shape, np.nan)
    for i, x in enumerate(points):
        try:
            with np.errstate(all="ignore"):
                values[i] = float(fn(np.asarray(x)))
        except (DeepPolyError, ArithmeticError, ValueError):
            continue
    return values, np.isfinite(values)


def error_report(approximant: Evaluable, target: Union[TargetSpec, Evaluable],
                 interval: Tuple[float, float], samples: int) -> ErrorReport:
    """Pointwise, sup and discrete L2 errors on the midpoint grid.

    Points where either side fails to evaluate are excluded and counted.
    """
    grid = sample_grid(interval, samples)
    q, q_ok = _evaluate_pointwise(approximant, grid.points)
    f, f_ok = _evaluate_pointwise(_as_callable(target), grid.points)
    ok = q_ok & f_ok
    if not np.any(ok):
        raise EvaluationError("No grid point could be evaluated", interval=list(interval))

    abs_err = np.abs(q - f)
    excluded = grid.points[~ok]
    if excluded.size:
        logger.warning("Excluded grid points from error report", count=int(excluded.size),
                       first=float(excluded[0]))

    rows = [
        PointwiseError(x=float(x), f=float(fv), q=float(qv), abs_err=float(e))
        for x, fv, qv, e in zip(grid.points[ok], f[ok], q[ok], abs_err[ok])
    ]
    kept = abs_err[ok]
    return ErrorReport(
        sup_error=float(np.max(kept)),
        l2_error=float(np.sqrt(np.sum(kept ** 2) * grid.dx)),
        pointwise=rows,
        grid=GridSpec(interval=tuple(interval), samples=samples),
        excluded_points=excluded.tolist(),
    )


def _check_tail_arguments(n: float, X: float, samples: int) -> None:
    if n <= 0 or X <= 0:
        raise DomainError(f"Tail error needs n > 0 and X > 0, got n={n}, X={X}")
    if samples < 2:
        raise DomainError(f"Tail error needs at least 2 samples, got {samples}")


def tail_error_direct(poly_coeffs: Sequence[float], n: float, X: float, samples: int) -> float:
    """Midpoint quadrature of |e^(-x) - P(x) e^(-n x^2)|^2 over [0, X]"""
    _check_tail_arguments(n, X, samples)
    grid = sample_grid((0.0, X), samples)
    x = grid.points
    residual = np.exp(-x) - polynomial.polyval(x, np.asarray(poly_coeffs, dtype=float)) * np.exp(-n * x * x)
    return float(np.sum(residual ** 2) * grid.dx)


def tail_error_rescaled(poly_coeffs: Sequence[float], n: float, X: float, samples: int) -> float:
    """The same error after y = sqrt(n) x: (1/sqrt(n)) |e^(-y/sqrt(n)) - P(y/sqrt(n)) e^(-y^2)|^2 over [0, sqrt(n) X]"""
    _check_tail_arguments(n, X, samples)
    root = math.sqrt(n)
    grid = sample_grid((0.0, root * X), samples)
    x = grid.points / root
    residual = np.exp(-x) - polynomial.polyval(x, np.asarray(poly_coeffs, dtype=float)) * np.exp(-grid.points ** 2)
    return float(np.sum(residual ** 2) * grid.dx / root)
