"""Exponential integral Ei at negative arguments.

``ei_neg(x)`` returns Ei(-x) = -E1(x) for x > 0. A power series is used
up to x = 6 and a continued fraction (modified Lentz) beyond.
"""
from __future__ import annotations

import math

import numpy as np

EULER_GAMMA = 0.57721566490153286061
SPLICE = 6.0
_MAX_ITER = 300
_EPS = 1e-17


def _series(x: float) -> float:
    # Ei(-x) = gamma + ln x + sum_{k>=1} (-x)^k / (k k!)
    term = 1.0
    terms = []
    for k in range(1, _MAX_ITER):
        term *= -x / k
        terms.append(term / k)
        if k > x and abs(term) < _EPS:
            break
    else:
        raise ArithmeticError(f"Ei series did not converge at x={x}")
    return EULER_GAMMA + math.log(x) + math.fsum(terms)


def _scaled_e1(x: float) -> float:
    # e^x E1(x) = 1 / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ArithmeticError(f"Ei continued fraction did not converge at x={x}")


def _continued_fraction(x: float) -> float:
    return -_scaled_e1(x) * math.exp(-x)


def _ei_neg_scalar(x: float) -> float:
    if not x > 0:
        raise ValueError(f"ei_neg needs x > 0, got {x}")
    if x == math.inf:
        return -0.0
    return _series(x) if x <= SPLICE else _continued_fraction(x)


def ei_neg(x):
    """Ei(-x) for x > 0 (scalar or array).

    Negative and strictly increasing towards 0; diverges like ln(x) as
    x -> 0+. For x beyond ~700 the result underflows to -0.0.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return _ei_neg_scalar(float(arr))
    return np.array([_ei_neg_scalar(v) for v in arr.ravel()]).reshape(arr.shape)


def exp_ei_neg(x):
    """e^x Ei(-x), the combination every closed-form rate is built from.

    Computed without forming e^x separately so large x does not overflow.
    """
    arr = np.asarray(x, dtype=float)

    def one(v):
        if v > SPLICE:
            return -_scaled_e1(v)
        return math.exp(v) * _ei_neg_scalar(v)

    if arr.ndim == 0:
        if not arr > 0:
            raise ValueError("exp_ei_neg needs x > 0")
        return one(float(arr))
    if np.any(~(arr > 0)):
        raise ValueError("exp_ei_neg needs x > 0")
    return np.array([one(v) for v in arr.ravel()]).reshape(arr.shape)


def ei_neg_approx(x):
    """Closed-form approximation Ei(-x) ~ -(sqrt(pi)/2) exp(-16 x / pi^2)."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise ValueError("ei_neg_approx needs x > 0")
    out = -0.5 * math.sqrt(math.pi) * np.exp(-16.0 * x / math.pi**2)
    return float(out) if out.ndim == 0 else out


def exp_ei_neg_approx(x):
    """e^x times ``ei_neg_approx(x)``, i.e. -(sqrt(pi)/2) e^{x (1 - 16/pi^2)}."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise ValueError("exp_ei_neg_approx needs x > 0")
    out = -0.5 * math.sqrt(math.pi) * np.exp(x * (1.0 - 16.0 / math.pi**2))
    return float(out) if out.ndim == 0 else out


def approx_error_by_decade(lo_exp: int = -3, hi_exp: int = 2, per_decade: int = 50):
    """Worst relative error of ``ei_neg_approx`` against ``ei_neg`` per decade.

    Returns a list of ``(x_lo, x_hi, max_rel_err, x_at_max)`` tuples.
    """
    rows = []
    for e in range(lo_exp, hi_exp):
        xs = np.logspace(e, e + 1, per_decade)
        exact = ei_neg(xs)
        # beyond ~700 exact underflows; the relative error is then meaningless
        ok = exact != 0
        rel = np.abs(ei_neg_approx(xs[ok]) / exact[ok] - 1.0)
        k = int(np.argmax(rel))
        rows.append((10.0**e, 10.0 ** (e + 1), float(rel[k]), float(xs[ok][k])))
    return rows
