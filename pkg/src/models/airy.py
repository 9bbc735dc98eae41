"""
Airy function of the second kind, Bi(x), on [-30, 10]

Bi(x) = Bi(0) f(x) + Bi'(0) g(x) with the Maclaurin series
    f = sum a_k x^(3k),     a_{k+1} = a_k / ((3k+2)(3k+3)),  a_0 = 1
    g = sum b_k x^(3k+1),   b_{k+1} = b_k / ((3k+3)(3k+4)),  b_0 = 1
summed in double-double arithmetic for x >= -8, and the oscillatory asymptotic
expansion for x < -8.
"""

import math
from decimal import Decimal, getcontext
from typing import Tuple, Union

import numpy as np

from src.core.errors import DomainError

ArrayLike = Union[float, np.ndarray]
DD = Tuple[np.ndarray, np.ndarray]

WINDOW = (-30.0, 10.0)
SERIES_LEFT = -8.0

_SPLITTER = 134217729.0  # 2**27 + 1
_SERIES_EPS = 1e-33
_MAX_SERIES_TERMS = 200
_MAX_ASYMPTOTIC_TERMS = 60

getcontext().prec = 60
_AI0 = Decimal("0.355028053887817239260063186004183176397979174199177")
_NEG_AIP0 = Decimal("0.258819403792806798405183560189203963479091138354934")
_SQRT3 = Decimal(3).sqrt()


def _dd_const(value: Decimal) -> Tuple[float, float]:
    hi = float(value)
    return hi, float(value - Decimal(hi))


BI0 = _dd_const(_SQRT3 * _AI0)
BIP0 = _dd_const(_SQRT3 * _NEG_AIP0)


# -- double-double kernels (elementwise on arrays) --------------------------------

def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def dd_add(x: DD, y: DD) -> DD:
    s, e = _two_sum(x[0], y[0])
    t, f = _two_sum(x[1], y[1])
    e = e + t
    s, e = _quick_two_sum(s, e)
    e = e + f
    return _quick_two_sum(s, e)


def dd_mul(x: DD, y: DD) -> DD:
    p, e = _two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return _quick_two_sum(p, e)


def dd_div_scalar(x: DD, d: float) -> DD:
    q1 = x[0] / d
    p, e = _two_prod(q1, d)
    s, f = _two_sum(x[0], -p)
    f = f - e + x[1]
    q2 = (s + f) / d
    return _quick_two_sum(q1, q2)


# -- evaluation paths ---------------------------------------------------------------

def _check_window(arr: np.ndarray, lo: float, hi: float, name: str) -> None:
    if not np.all((arr >= lo) & (arr <= hi)):
        bad = arr[~((arr >= lo) & (arr <= hi))]
        raise DomainError(f"{name} is supported on [{lo}, {hi}]; got {bad[:5].tolist()}", window=[lo, hi])


def _sum_series(x: np.ndarray, derivative: bool) -> np.ndarray:
    """Bi (or Bi') by compensated Maclaurin summation"""
    zero = np.zeros_like(x)
    x3 = dd_mul(_two_prod(x, x), (x, zero))
    if derivative:
        # f' = sum u_k, u_1 = x^2/2, u_{k+1} = u_k x^3 / (3k (3k+2));  g' = sum v_k, v_0 = 1, v_{k+1} = v_k x^3 / ((3k+1)(3k+3))
        tf = dd_div_scalar(_two_prod(x, x), 2.0)
        tg = (np.ones_like(x), zero)
        f_den = lambda k: 3.0 * (k + 1) * (3 * (k + 1) + 2)  # noqa: E731
        g_den = lambda k: (3.0 * k + 1) * (3 * k + 3)  # noqa: E731
    else:
        tf = (np.ones_like(x), zero)
        tg = (x.copy(), zero)
        f_den = lambda k: (3.0 * k + 2) * (3 * k + 3)  # noqa: E731
        g_den = lambda k: (3.0 * k + 3) * (3 * k + 4)  # noqa: E731
    f, g = tf, tg
    peak_f = np.abs(tf[0])
    peak_g = np.abs(tg[0])
    for k in range(_MAX_SERIES_TERMS):
        tf = dd_div_scalar(dd_mul(tf, x3), f_den(k))
        tg = dd_div_scalar(dd_mul(tg, x3), g_den(k))
        f = dd_add(f, tf)
        g = dd_add(g, tg)
        peak_f = np.maximum(peak_f, np.abs(tf[0]))
        peak_g = np.maximum(peak_g, np.abs(tg[0]))
        if np.all(np.abs(tf[0]) <= _SERIES_EPS * peak_f) and np.all(np.abs(tg[0]) <= _SERIES_EPS * peak_g):
            break
    c0 = (np.full_like(x, BI0[0]), np.full_like(x, BI0[1]))
    c1 = (np.full_like(x, BIP0[0]), np.full_like(x, BIP0[1]))
    total = dd_add(dd_mul(c0, f), dd_mul(c1, g))
    return total[0] + total[1]


def _asymptotic_coefficients(count: int) -> np.ndarray:
    # u_0 = 1, u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k)
    u = np.empty(count)
    u[0] = 1.0
    for k in range(1, count):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
    return u


_U = _asymptotic_coefficients(_MAX_ASYMPTOTIC_TERMS)


def _sum_asymptotic(x: np.ndarray) -> np.ndarray:
    """Bi(-z), z = -x > 0, from the oscillatory expansion truncated at its smallest term"""
    z = -x
    zeta = (2.0 / 3.0) * z * np.sqrt(z)
    even = np.ones_like(z)
    odd = np.zeros_like(z)
    previous = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, _MAX_ASYMPTOTIC_TERMS):
        term = _U[k] / zeta ** k
        active &= (term < previous) & (previous > 1e-18)
        if not np.any(active):
            break
        signed = np.where(active, term, 0.0) * (-1.0) ** (k // 2)
        if k % 2 == 0:
            even = even + signed
        else:
            odd = odd + signed
        previous = np.where(active, term, previous)
    phase = zeta - math.pi / 4.0
    return (-np.sin(phase) * even + np.cos(phase) * odd) / (math.sqrt(math.pi) * z ** 0.25)


def airy_bi_series(x: ArrayLike) -> ArrayLike:
    """Maclaurin path without window checks beyond finiteness; accurate for x >= -10"""
    arr = np.asarray(x, dtype=float)
    out = _sum_series(np.atleast_1d(arr), derivative=False).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def airy_bi_asymptotic(x: ArrayLike) -> ArrayLike:
    """Oscillatory asymptotic path; meaningful for x well below 0"""
    arr = np.asarray(x, dtype=float)
    if not np.all(arr < 0):
        raise DomainError("The oscillatory expansion needs x < 0")
    out = _sum_asymptotic(np.atleast_1d(arr)).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def airy_bi(x: ArrayLike) -> ArrayLike:
    """Bi(x) for x in [-30, 10]"""
    arr = np.asarray(x, dtype=float)
    _check_window(arr, *WINDOW, name="airy_bi")
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    series = flat >= SERIES_LEFT
    if np.any(series):
        out[series] = _sum_series(flat[series], derivative=False)
    if np.any(~series):
        out[~series] = _sum_asymptotic(flat[~series])
    out = out.reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def airy_bi_prime(x: ArrayLike) -> ArrayLike:
    """Bi'(x) on the series window [-8, 10]"""
    arr = np.asarray(x, dtype=float)
    _check_window(arr, SERIES_LEFT, WINDOW[1], name="airy_bi_prime")
    out = _sum_series(np.atleast_1d(arr).ravel(), derivative=True).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def airy_bi_envelope(x: ArrayLike) -> ArrayLike:
    """Magnitude scale max(|Bi(x)|, |x|^(-1/4)/sqrt(pi)) used for relative errors near zeros"""
    arr = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        scale = np.where(arr < 0, np.abs(arr) ** -0.25 / math.sqrt(math.pi), 0.0)
    scale = np.where(np.isfinite(scale), scale, 0.0)
    out = np.maximum(np.abs(airy_bi(arr)), scale)
    return float(out) if arr.ndim == 0 else out
