"""
Classical comparators: Chebyshev interpolation, Taylor expansion, Newton composite for |x|
"""

import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from numpy.polynomial import chebyshev as C

from src.core.errors import DomainError, EvaluationError
from src.models.targets import derivatives, evaluate_target
from src.schemas.baselines import ChebModel, TaylorModel
from src.schemas.targets import TargetSpec

logger = structlog.get_logger(__name__)

ArrayLike = Union[float, np.ndarray]

NEWTON_BASIN = math.sqrt(3.0)


def chebyshev_points(degree: int) -> np.ndarray:
    """Chebyshev points of the second kind cos(j pi / d), j = 0..d, on [-1, 1]"""
    if degree == 0:
        return np.array([0.0])
    return np.cos(np.pi * np.arange(degree + 1) / degree)


def _to_unit(interval: Tuple[float, float], x: np.ndarray) -> np.ndarray:
    a, b = interval
    return (2.0 * x - (a + b)) / (b - a)


def _from_unit(interval: Tuple[float, float], t: np.ndarray) -> np.ndarray:
    a, b = interval
    return 0.5 * (b - a) * t + 0.5 * (a + b)


def chebyshev_fit(target: TargetSpec, interval: Tuple[float, float], degree: int) -> ChebModel:
    """Interpolate the target at the d+1 second-kind Chebyshev points mapped to [a, b]"""
    t = chebyshev_points(degree)
    nodes = _from_unit(interval, t)
    values = np.asarray(evaluate_target(target, nodes), dtype=float)
    coeffs = C.chebfit(t, values, degree)

    residual = np.max(np.abs(C.chebval(t, coeffs) - values))
    scale = max(1.0, float(np.max(np.abs(values))))
    if residual > 1e-12 * scale * max(1, degree):
        # exact in exact arithmetic
        logger.warning("Chebyshev interpolation residual above tolerance", residual=float(residual), degree=degree)
    logger.debug("Chebyshev fit", target=target.label(), degree=degree, residual=float(residual))
    return ChebModel(interval=tuple(interval), coeffs=coeffs.tolist())


def chebyshev_eval(model: ChebModel, x: ArrayLike) -> ArrayLike:
    """Clenshaw evaluation; points outside the model interval are extrapolated and logged"""
    arr = np.asarray(x, dtype=float)
    t = _to_unit(model.interval, arr)
    if np.any(np.abs(t) > 1.0 + 1e-12):
        logger.warning("Chebyshev model extrapolating", count=int(np.sum(np.abs(t) > 1.0 + 1e-12)))
    out = C.chebval(t, np.asarray(model.coeffs))
    return float(out) if arr.ndim == 0 else out


def taylor_model(target: TargetSpec, center: float, degree: int,
                 supplied_derivatives: Optional[Sequence[float]] = None) -> TaylorModel:
    """Coefficients f^(k)(x0)/k! of the degree-d Taylor polynomial about x0.

    Targets without closed-form derivatives need supplied_derivatives (f, f', ..., f^(d)).
    """
    if supplied_derivatives is not None:
        values = np.asarray(supplied_derivatives, dtype=float)
        if values.size < degree + 1:
            raise DomainError(f"Need {degree + 1} derivative values, got {values.size}")
        values = values[:degree + 1]
    else:
        values = derivatives(target, center, degree + 1)
    factorials = np.array([math.factorial(k) for k in range(degree + 1)], dtype=float)
    return TaylorModel(center=center, coeffs=(values / factorials).tolist())


def taylor_eval(model: TaylorModel, x: ArrayLike) -> ArrayLike:
    arr = np.asarray(x, dtype=float)
    out = np.polynomial.polynomial.polyval(arr - model.center, np.asarray(model.coeffs))
    return float(out) if arr.ndim == 0 else out


def newton_abs(x: ArrayLike, iterations: int) -> ArrayLike:
    """x^2 f_k(x) with f_{k+1} = f_k (3 - x^2 f_k^2) / 2, f_0 = 1; a degree-3^k deep polynomial for |x|"""
    if iterations < 0:
        raise DomainError(f"iterations must be >= 0, got {iterations}")
    arr = np.asarray(x, dtype=float)
    if not np.all(np.abs(arr) <= NEWTON_BASIN):
        raise DomainError("Newton iteration for |x| diverges for |x| > sqrt(3)", basin=NEWTON_BASIN)
    x2 = arr * arr
    f = np.ones_like(arr)
    for _ in range(iterations):
        f = 0.5 * f * (3.0 - x2 * f * f)
    out = x2 * f
    if not np.all(np.isfinite(out)):
        raise EvaluationError("Newton iteration produced a non-finite value")
    return float(out) if arr.ndim == 0 else out
