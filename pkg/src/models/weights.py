"""
Weight functions, their powers and derivatives, and external-field admissibility
"""

from dataclasses import dataclass
from typing import Callable, Literal, Union

import numpy as np
import structlog

from src.core.errors import DomainError, EvaluationError, UnsupportedError
from src.schemas.weights import AdmissibilityReport, FieldSpec, WeightSpec

logger = structlog.get_logger(__name__)

ArrayLike = Union[float, np.ndarray]

# log-spaced grid for sampled admissibility checks
ADMISSIBILITY_GRID = np.logspace(-6, 6, 1201)


@dataclass(frozen=True)
class GeneralField:
    """An external field given by callables Q and Q'"""
    q: Callable[[np.ndarray], np.ndarray]
    dq: Callable[[np.ndarray], np.ndarray]


def _finish(values: np.ndarray, scalar: bool) -> ArrayLike:
    return float(values) if scalar else values


def log_weight(spec: WeightSpec, x: ArrayLike) -> ArrayLike:
    """log w(x), i.e. -Q(x) for the exponential kinds"""
    arr = np.asarray(x, dtype=float)
    ramp = np.maximum(arr, 0.0)
    kind = spec.kind
    if kind == "one_sided_gaussian":
        out = -np.square(ramp)
    elif kind == "one_sided_reciprocal":
        out = -np.log1p(ramp)
    elif kind == "freud":
        out = -np.power(np.abs(arr), spec.lam)
    elif kind == "general_field":
        out = -spec.field.c * np.power(np.abs(arr), spec.field.n)
    elif kind == "one_sided_field":
        out = -spec.field.c * np.power(ramp, spec.field.n)
    else:
        out = np.zeros_like(arr)
    return _finish(out, arr.ndim == 0)


def evaluate(spec: WeightSpec, x: ArrayLike) -> ArrayLike:
    """w(x); one-sided kinds take the left branch at x = 0 (both branches give 1)"""
    arr = np.asarray(x, dtype=float)
    if spec.kind == "one_sided_reciprocal":
        out = 1.0 / (1.0 + np.maximum(arr, 0.0))
    elif spec.kind == "constant":
        out = np.ones_like(arr)
    else:
        out = np.exp(log_weight(spec, arr))
    return _finish(out, arr.ndim == 0)


def evaluate_pow(spec: WeightSpec, gamma: float, x: ArrayLike) -> ArrayLike:
    """w(x)^gamma computed as exp(gamma * log w(x)); underflows to 0.0 only past double range"""
    arr = np.asarray(x, dtype=float)
    if gamma == 0:
        out = np.ones_like(arr)
    else:
        out = np.exp(gamma * log_weight(spec, arr))
    return _finish(out, arr.ndim == 0)


def _power_field_derivative(c: float, n: float, x: float, order: int, sign: float) -> float:
    """Derivative of exp(-c|x|^n) on the branch with the given sign of x"""
    ax = abs(x)
    w = np.exp(-c * ax ** n)
    dq = sign * c * n * ax ** (n - 1)
    if order == 1:
        return float(-dq * w)
    if n < 2 and ax == 0 and n != 1:
        raise DomainError(f"Second derivative of exp(-c|x|^{n}) is unbounded at 0")
    ddq = 0.0 if n == 1 else c * n * (n - 1) * ax ** (n - 2)
    return float((dq * dq - ddq) * w)


def derivative_at(spec: WeightSpec, x: float, order: int, side: Literal["left", "right"] = "left") -> float:
    """Closed-form derivative of w of order 0, 1 or 2.

    At x = 0 the side selects the branch (0- or 0+). Away from 0 the side is ignored.
    """
    if order not in (0, 1, 2):
        raise UnsupportedError(f"Derivative order {order} is not supported", order=order)
    if order == 0:
        return float(evaluate(spec, x))

    right = x > 0 or (x == 0 and side == "right")
    sign = 1.0 if right else -1.0
    kind = spec.kind

    if kind == "constant":
        return 0.0
    if spec.one_sided and not right:
        return 0.0
    if kind == "one_sided_gaussian":
        w = np.exp(-x * x)
        return float(-2.0 * x * w) if order == 1 else float((4.0 * x * x - 2.0) * w)
    if kind == "one_sided_reciprocal":
        return -1.0 / (x + 1.0) ** 2 if order == 1 else 2.0 / (x + 1.0) ** 3
    if kind == "freud":
        return _power_field_derivative(1.0, spec.lam, x, order, sign)
    return _power_field_derivative(spec.field.c, spec.field.n, x, order, sign)


def _analytic_report(n: float) -> AdmissibilityReport:
    # Q = c x^n, c > 0, n >= 1: Q' = c n x^(n-1) > 0, x Q' = c n x^n increasing to 0 at 0+, ratio = n
    return AdmissibilityReport(
        condition_a=True,
        condition_b=True,
        condition_c=True,
        ratio_limit=float(n),
        method="analytic",
    )


def check_field_admissibility(field: Union[FieldSpec, WeightSpec, GeneralField]) -> AdmissibilityReport:
    """Check conditions (a) Q' > 0, (b) xQ' strictly increasing with limit 0 at 0+,
    (c) xQ'/Q asymptotically constant.

    Power fields are decided analytically; general fields are sampled on a log-spaced
    grid over [1e-6, 1e6].
    """
    if isinstance(field, FieldSpec):
        return _analytic_report(field.n)
    if isinstance(field, WeightSpec):
        if field.kind == "freud":
            return _analytic_report(field.lam)
        if field.field is not None:
            return _analytic_report(field.field.n)
        raise UnsupportedError(f"Weight kind {field.kind} has no external field")

    x = ADMISSIBILITY_GRID
    with np.errstate(all="ignore"):
        q = np.asarray(np.broadcast_to(field.q(x), x.shape), dtype=float)
        dq = np.asarray(np.broadcast_to(field.dq(x), x.shape), dtype=float)
    if not (np.all(np.isfinite(q)) and np.all(np.isfinite(dq))):
        raise EvaluationError("External field is not evaluable on the admissibility grid")

    xdq = x * dq
    condition_a = bool(np.all(dq > 0))
    condition_b = bool(np.all(np.diff(xdq) > 0) and abs(xdq[0]) < 1e-2)

    with np.errstate(all="ignore"):
        ratio = xdq / q
    tail = ratio[x >= 1e5]
    ratio_limit = float(tail[-1]) if tail.size else float("nan")
    flat = bool(np.all(np.isfinite(tail))) and np.ptp(tail) <= 1e-2 * max(abs(ratio_limit), 1e-300)
    condition_c = flat and np.isfinite(ratio_limit) and ratio_limit > 0

    report = AdmissibilityReport(
        condition_a=condition_a,
        condition_b=condition_b,
        condition_c=bool(condition_c),
        ratio_limit=ratio_limit if np.isfinite(ratio_limit) else 0.0,
        method="sampled",
    )
    logger.debug("Sampled field admissibility", **report.model_dump())
    return report
