"""
Mhaskar-Rakhmanov-Saff numbers, endpoint localization and restricted-range checks

Both integral equations carry a 1/sqrt(a^2 - t^2) endpoint singularity. The
substitution t = a sin(theta) turns them into smooth integrals over [0, pi/2],
evaluated with a fixed Gauss-Legendre rule.
"""

import math
from functools import lru_cache
from typing import Callable, Sequence, Tuple, Union

import numpy as np
import structlog
from numpy.polynomial import legendre, polynomial
from scipy.optimize import brentq
from scipy.special import gammaln

from src.core.config import settings
from src.core.errors import DomainError, SolverError
from src.models import weights as W
from src.models.weights import GeneralField
from src.schemas.mrs import MrsResult, RestrictedRangeReport
from src.schemas.weights import FieldSpec, WeightSpec

logger = structlog.get_logger(__name__)

BRACKET = (1e-12, 1e12)

FieldLike = Union[FieldSpec, WeightSpec, GeneralField]


@lru_cache(maxsize=8)
def _half_pi_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, pi/2]"""
    t, w = legendre.leggauss(nodes)
    return 0.25 * math.pi * (t + 1.0), 0.25 * math.pi * w


def gamma_lambda(lam: float) -> float:
    """sqrt(pi) Gamma(lam/2) / (2 Gamma((lam+1)/2))"""
    return 0.5 * math.sqrt(math.pi) * math.exp(gammaln(0.5 * lam) - gammaln(0.5 * (lam + 1.0)))


def freud_mrs(lam: float, n: float) -> MrsResult:
    """Closed form a_n = (n gamma_lam)^(1/lam) for the Freud weight exp(-|x|^lam)"""
    if lam < 1:
        raise DomainError(f"Freud exponent must be >= 1, got {lam}", lam=lam)
    if n <= 0:
        raise DomainError(f"Degree must be positive, got {n}", n=n)
    a_n = (n * gamma_lambda(lam)) ** (1.0 / lam)
    return MrsResult(a_n=a_n, method="closed_form", residual=None)


def _field_derivative(field: FieldLike) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(field, GeneralField):
        return field.dq
    if isinstance(field, WeightSpec):
        if field.kind == "freud":
            field = FieldSpec(c=1.0, n=field.lam) if field.lam > 1 else None
        else:
            field = field.field
        if field is None:
            raise DomainError("Weight has no admissible external field for a numeric MRS solve")
    c, n = field.c, field.n
    return lambda t: c * n * np.power(t, n - 1.0)


def _solve_increasing(lhs: Callable[[float], float], rhs: float, what: str) -> Tuple[float, float]:
    """Bracket lhs(a) = rhs on [1e-12, 1e12] by doubling/halving from a = 1, then brentq"""
    lo = hi = 1.0
    g = lambda a: lhs(a) - rhs  # noqa: E731
    while g(lo) > 0:
        lo *= 0.5
        if lo < BRACKET[0]:
            raise SolverError(f"No bracket for {what} above {BRACKET[0]}", diagnosis="lhs exceeds target at every a")
    while g(hi) < 0:
        hi *= 2.0
        if hi > BRACKET[1]:
            raise SolverError(f"No bracket for {what} below {BRACKET[1]}", diagnosis="lhs stays below target at every a")
    if lo == hi:
        root = lo
    else:
        root = brentq(g, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    residual = abs(g(root))
    if residual >= settings.solver_tolerance * max(1.0, abs(rhs)):
        raise SolverError(f"{what} residual {residual:.3e} above tolerance", diagnosis="root not resolved", residual=residual)
    return root, residual


def mrs_lhs(field: FieldLike, a: float) -> float:
    """(2/pi) int_0^1 a t Q'(a t) / sqrt(1 - t^2) dt = (2/pi) int_0^{pi/2} a sin(th) Q'(a sin(th)) dth"""
    dq = _field_derivative(field)
    theta, w = _half_pi_rule(settings.quadrature_nodes)
    s = a * np.sin(theta)
    return float((2.0 / math.pi) * np.sum(w * s * dq(s)))


def mrs_numeric(field: FieldLike, n: float) -> MrsResult:
    """Solve the MRS equation for a by bracketing and Brent's method"""
    if n <= 0:
        raise DomainError(f"Degree must be positive, got {n}", n=n)
    if not isinstance(field, GeneralField):
        report = W.check_field_admissibility(field)
        if not report.admissible:
            raise DomainError("External field is not admissible", **report.model_dump())
    root, residual = _solve_increasing(lambda a: mrs_lhs(field, a), n, "MRS equation")
    logger.debug("Solved MRS equation", n=n, a_n=root, residual=residual)
    return MrsResult(a_n=root, method="numeric", residual=residual)


def power_potential(c: float, n: float) -> Callable[[np.ndarray], np.ndarray]:
    """Phi'(t) for Phi(t) = c t^n"""
    if c <= 0 or n <= 0:
        raise DomainError(f"Potential c t^n needs c > 0 and n > 0, got c={c}, n={n}")
    return lambda t: c * n * np.power(t, n - 1.0)


def endpoint_lhs(phi_prime: Callable[[np.ndarray], np.ndarray], a: float) -> float:
    """int_0^a Phi'(t) / sqrt(a^2 - t^2) dt = int_0^{pi/2} Phi'(a sin(th)) dth"""
    theta, w = _half_pi_rule(settings.quadrature_nodes)
    return float(np.sum(w * phi_prime(a * np.sin(theta))))


def endpoint_localization(phi: Union[FieldSpec, Callable[[np.ndarray], np.ndarray]]) -> MrsResult:
    """Solve int_0^a Phi'(t)/sqrt(a^2 - t^2) dt = pi/2 for the localization endpoint a"""
    phi_prime = power_potential(phi.c, phi.n) if isinstance(phi, FieldSpec) else phi
    trial_points = np.logspace(-3, 3, 13)
    with np.errstate(all="ignore"):
        values = np.array([endpoint_lhs(phi_prime, a) for a in trial_points])
    if not np.all(np.isfinite(values)):
        raise SolverError("Endpoint integral is not finite", diagnosis="Phi' not evaluable on the trial range")
    spread = np.ptp(values)
    if spread <= 1e-12 * max(1.0, float(np.max(np.abs(values)))):
        raise SolverError(
            "Endpoint equation is degenerate",
            diagnosis="integral does not depend on a (Phi' constant); every a or no a solves it",
        )
    if not np.all(np.diff(values) > 0):
        raise SolverError("Endpoint equation is not monotone in a", diagnosis="integral not strictly increasing on [1e-3, 1e3]")
    root, residual = _solve_increasing(lambda a: endpoint_lhs(phi_prime, a), 0.5 * math.pi, "endpoint equation")
    logger.debug("Solved endpoint localization", a=root, residual=residual)
    return MrsResult(a_n=root, method="numeric", residual=residual)


def effective_interval(n: float) -> Tuple[float, float]:
    """[0, a/sqrt(n)] for the one-sided Gaussian weight raised to the power n"""
    if n <= 0:
        raise DomainError(f"n must be positive, got {n}")
    a = endpoint_localization(power_potential(1.0, 2.0)).a_n
    return 0.0, a / math.sqrt(n)


def restricted_range_check(poly_coeffs: Sequence[float], weight: WeightSpec, a: float) -> RestrictedRangeReport:
    """Compare sup |p w| on [-a, a] with the sup over [-10a, -a] U [a, 10a]"""
    if a <= 0:
        raise DomainError(f"a must be positive, got {a}")
    coeffs = np.asarray(poly_coeffs, dtype=float)
    points = settings.restricted_range_points

    def weighted(x: np.ndarray) -> np.ndarray:
        return np.abs(polynomial.polyval(x, coeffs) * W.evaluate(weight, x))

    inside_x = np.linspace(-a, a, points)
    inside = weighted(inside_x)
    half = points // 2
    outside_x = np.concatenate([np.linspace(-10 * a, -a, half), np.linspace(a, 10 * a, points - half)])
    outside = weighted(outside_x)

    sup_inside = float(np.max(inside))
    sup_outside = float(np.max(outside))
    tail = float(np.max(weighted(np.array([-10 * a, 10 * a]))))
    report = RestrictedRangeReport(
        a=a,
        sup_inside=sup_inside,
        sup_outside=sup_outside,
        holds=sup_outside <= sup_inside * (1 + 1e-9),
        argmax_inside=float(inside_x[int(np.argmax(inside))]),
        tail_ratio=tail / sup_inside if sup_inside > 0 else float("inf"),
    )
    logger.debug("Restricted range check", **report.model_dump())
    return report
