"""Ergodic sum rate and coverage region.

The achievable sum rate at distances (d1, d2) is

    E[ 1/2 log2(1 + min(gamma1 / d1^alpha, gamma2 / d2^alpha)) ]

and the coverage region is the set of (d1, d2) where it exceeds a target.
Three evaluators are provided:

``sum_rate_quadrature``
    2-D adaptive quadrature of the rate against ``fading.joint_pdf``. Works
    for every copula with a density and is the reference for the others.
``sum_rate_fgm_exact``
    Closed form for the FGM copula as a combination of eight integrals
    A1..A4, B1..B4, each a multiple of e^s Ei(-s).
``sum_rate_fgm_approx``
    The same combination with e^s Ei(-s) replaced by
    -(sqrt(pi)/2) e^{s (1 - 16/pi^2)}.

Term convention
---------------
Write L_i = d_i^alpha and split the SNR plane along the kink of the min,
gamma1 / L1 = gamma2 / L2 (the diagonal gamma1 = gamma2 when L1 = L2).
For weights (j, k)

    A_jk = int int_{gamma1/L1 < gamma2/L2} w_jk log2(1 + gamma1/L1) / (2 g1 g2)
    B_jk = int int_{gamma1/L1 > gamma2/L2} w_jk log2(1 + gamma2/L2) / (2 g1 g2)

with w_jk = exp(-j gamma1/g1 - k gamma2/g2). Both equal a coefficient
times e^s Ei(-s), s = j L1/g1 + k L2/g2:

    A_jk = -L1 / (k g1 s) * e^s Ei(-s) / (2 ln 2)
    B_jk = -L2 / (j g2 s) * e^s Ei(-s) / (2 ln 2)

Labels: 1 -> (1, 1), 2 -> (1, 2), 3 -> (2, 1), 4 -> (2, 2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .dependence import DependenceModel, Family, NoDensity
from .fading import AvgSnrPair, Geometry, joint_pdf
from .specfun import ei_neg, exp_ei_neg, exp_ei_neg_approx

LN2 = math.log(2.0)
TERM_WEIGHTS = {1: (1, 1), 2: (1, 2), 3: (2, 1), 4: (2, 2)}
TERM_NAMES = [f"{side}{i}" for side in "AB" for i in TERM_WEIGHTS]
# FGM density expansion: 1 + θ(1 - 2e^{-x})(1 - 2e^{-y})
_THETA_COEFF = {1: 1.0, 2: -2.0, 3: -2.0, 4: 4.0}

METHODS = ("quadrature", "exact", "approx")


class QuadratureFailure(RuntimeError):
    """The adaptive quadrature could not certify the requested tolerance."""


# --- closed-form building blocks --------------------------------------------

def log_exp_antiderivative(x, zeta: float, eta: float):
    """Antiderivative of e^{-zeta x} log2(1 + eta x)."""
    x = np.asarray(x, dtype=float)
    arg = zeta / eta + zeta * x
    val = (math.exp(zeta / eta) * ei_neg(arg) - np.exp(-zeta * x) * np.log1p(eta * x)) / (zeta * LN2)
    return float(val) if np.ndim(val) == 0 else val


def log_exp_integral(zeta: float, eta: float) -> float:
    """int_0^inf e^{-zeta x} log2(1 + eta x) dx = -e^{zeta/eta} Ei(-zeta/eta) / (zeta ln 2)."""
    return -float(exp_ei_neg(zeta / eta)) / (zeta * LN2)


def ei_exp_integral(zeta: float, kappa: float, eta: float) -> float:
    """int_0^inf e^{-zeta x} Ei(-(kappa + eta x)) dx."""
    s = (zeta + eta) * kappa / eta
    return (float(ei_neg(kappa)) - math.exp(zeta * kappa / eta - s) * float(exp_ei_neg(s))) / zeta


def _term_arg(snrs, geom, j, k):
    return j * geom.loss1 / snrs.gbar1 + k * geom.loss2 / snrs.gbar2


def term_coefficients(snrs: AvgSnrPair, geom: Geometry, name: str) -> tuple[float, float]:
    """(coefficient, s) such that the term equals coefficient * e^s Ei(-s)."""
    side, idx = name[0], int(name[1:])
    j, k = TERM_WEIGHTS[idx]
    s = _term_arg(snrs, geom, j, k)
    if side == "A":
        coef = -geom.loss1 / (k * snrs.gbar1 * s) / (2 * LN2)
    elif side == "B":
        coef = -geom.loss2 / (j * snrs.gbar2 * s) / (2 * LN2)
    else:
        raise KeyError(name)
    return coef, s


def ei_term(snrs: AvgSnrPair, geom: Geometry, name: str, approx: bool = False) -> float:
    coef, s = term_coefficients(snrs, geom, name)
    return coef * float(exp_ei_neg_approx(s) if approx else exp_ei_neg(s))


def ei_terms(snrs: AvgSnrPair, geom: Geometry, approx: bool = False) -> dict[str, float]:
    """All eight terms keyed ``"A1"`` .. ``"B4"``."""
    return {name: ei_term(snrs, geom, name, approx) for name in TERM_NAMES}


def _ladder(scale: float, hi: float, ratio: float = 8.0) -> list[np.ndarray]:
    # initial cuts at scale, 8*scale, ... so the log's knee is resolved
    pts, c = [], scale
    while c < hi:
        pts.append(np.array([c, 0.5]))
        c *= ratio
    return pts


def _split_cubature(snrs, geom, weight, top=40.0, rtol=1e-11, atol=1e-13):
    """Integrate log(1 + min) * weight over both sides of the kink.

    Works in scaled coordinates x = gamma1/g1, y = gamma2/g2, each on
    [0, top]. ``weight(x, y)`` is vectorised. Each side is mapped to a
    rectangle (outer variable, fraction t of the inner span) and given to
    ``scipy.integrate.cubature``. Returns ``(side_a, side_b)`` results, the
    natural log of the rate kept (no 1/(2 ln 2) factor).
    """
    g1, g2, l1, l2 = snrs.gbar1, snrs.gbar2, geom.loss1, geom.loss2
    slope = g1 * l2 / (g2 * l1)
    xa, yb = min(top, top / slope), min(top, top * slope)

    def side_a(p):
        x, t = p[:, 0], p[:, 1]
        span = top - slope * x
        return np.log1p(g1 * x / l1) * weight(x, slope * x + t * span) * span

    def side_b(p):
        y, t = p[:, 0], p[:, 1]
        span = top - y / slope
        return np.log1p(g2 * y / l2) * weight(y / slope + t * span, y) * span

    ra = integrate.cubature(side_a, [0.0, 0.0], [xa, 1.0], rtol=rtol, atol=atol, points=_ladder(l1 / g1, xa))
    rb = integrate.cubature(side_b, [0.0, 0.0], [yb, 1.0], rtol=rtol, atol=atol, points=_ladder(l2 / g2, yb))
    return ra, rb


def term_quadrature(snrs: AvgSnrPair, geom: Geometry, name: str) -> float:
    """Direct 2-D quadrature of a term's defining integral (reference values)."""
    side, idx = name[0], int(name[1:])
    j, k = TERM_WEIGHTS[idx]
    ra, rb = _split_cubature(snrs, geom, lambda x, y: np.exp(-j * x - k * y))
    res = ra if side == "A" else rb
    if res.status != "converged":
        raise QuadratureFailure(f"term {name} did not converge")
    return float(res.estimate) / (2 * LN2)


# --- sum-rate evaluators ----------------------------------------------------

def _check_theta(theta_f):
    if not -1.0 <= theta_f <= 1.0:
        raise ValueError(f"FGM parameter must lie in [-1, 1], got {theta_f}")


def _combine(terms: dict[str, float], theta_f: float) -> float:
    base = terms["A1"] + terms["B1"]
    bracket = sum(_THETA_COEFF[i] * (terms[f"A{i}"] + terms[f"B{i}"]) for i in TERM_WEIGHTS)
    return base + theta_f * bracket


def sum_rate_fgm_exact(snrs: AvgSnrPair, geom: Geometry, theta_f: float) -> float:
    """Ergodic sum rate under the FGM copula from the Ei closed forms."""
    _check_theta(theta_f)
    return _combine(ei_terms(snrs, geom), theta_f)


def sum_rate_fgm_approx(snrs: AvgSnrPair, geom: Geometry, theta_f: float) -> float:
    """Like ``sum_rate_fgm_exact`` but with the exponential approximation of Ei."""
    _check_theta(theta_f)
    return _combine(ei_terms(snrs, geom, approx=True), theta_f)


def sum_rate_quadrature(
    model: DependenceModel,
    snrs: AvgSnrPair,
    geom: Geometry,
    budget: float = 1e-8,
    truncation: float = 40.0,
) -> float:
    """E[1/2 log2(1 + min(gamma1/L1, gamma2/L2))] by 2-D adaptive quadrature.

    The rate is integrated against ``fading.joint_pdf`` on both sides of
    the kink of the min with adaptive cubature. Each SNR axis is truncated
    at ``truncation`` times its own mean; the neglected tail is bounded
    and counted in the error estimate.

    Raises
    ------
    NoDensity
        For the Fréchet–Hoeffding bounds.
    QuadratureFailure
        When the estimated absolute error exceeds ``budget``.
    """
    if not model.has_density:
        raise NoDensity(f"{model.family.value} has no density")
    g1, g2 = snrs.gbar1, snrs.gbar2

    def weight(x, y):
        return joint_pdf(model, snrs, g1 * x, g2 * y) * (g1 * g2)

    ra, rb = _split_cubature(snrs, geom, weight, top=truncation)
    # tail mass <= 2 e^{-top} per axis; rate there grows only like log(top)
    peak = max(g1 / geom.loss1, g2 / geom.loss2)
    tail = 2.0 * math.exp(-truncation) * (1.0 + math.log1p(truncation * peak))
    err = float(ra.error + rb.error) / (2 * LN2) + tail
    converged = ra.status == rb.status == "converged"
    if not (converged and err <= budget):
        raise QuadratureFailure(f"quadrature error estimate {err:.3g} exceeds {budget:.3g}")
    return float(ra.estimate + rb.estimate) / (2 * LN2)


def sum_rate(model: DependenceModel, snrs: AvgSnrPair, geom: Geometry, method: str = "exact") -> float:
    """Sum rate by ``method``; the closed forms need an FGM or independence model."""
    if method == "quadrature":
        return sum_rate_quadrature(model, snrs, geom)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if model.family is Family.FGM:
        theta = model.theta
    elif model.family is Family.INDEPENDENCE:
        theta = 0.0
    else:
        raise ValueError(f"closed forms only cover FGM/independence, not {model.family.value}")
    fn = sum_rate_fgm_exact if method == "exact" else sum_rate_fgm_approx
    return fn(snrs, geom, theta)


# --- coverage region --------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    d1_max: float
    d2_max: float
    n1: int = 50
    n2: int = 50

    def __post_init__(self):
        if not (self.d1_max > 0 and self.d2_max > 0):
            raise ValueError("grid extents must be positive")
        if self.n1 < 2 or self.n2 < 2:
            raise ValueError("grid resolution must be at least 2 per axis")

    @property
    def d1(self) -> np.ndarray:
        return (np.arange(self.n1) + 0.5) * self.d1_max / self.n1

    @property
    def d2(self) -> np.ndarray:
        return (np.arange(self.n2) + 0.5) * self.d2_max / self.n2

    @property
    def cell_area(self) -> float:
        return (self.d1_max / self.n1) * (self.d2_max / self.n2)


@dataclass
class CoverageResult:
    """Cell-centre sum rates and membership; ``inside[i, j]`` is for (d1[i], d2[j])."""

    grid: GridSpec
    target_rate: float
    rates: np.ndarray
    inside: np.ndarray = field(init=False)
    area: float = field(init=False)

    def __post_init__(self):
        self.inside = self.rates > self.target_rate
        self.area = self.grid.cell_area * int(self.inside.sum())

    @property
    def d1(self):
        return self.grid.d1

    @property
    def d2(self):
        return self.grid.d2


def coverage_region(
    model: DependenceModel,
    snrs_at_unit_distance: AvgSnrPair,
    alpha: float,
    target_rate: float,
    grid: GridSpec,
    method: str = "exact",
) -> CoverageResult:
    """Evaluate the sum rate at every cell centre and threshold it (strictly).

    The receiver sits at the origin; ``snrs_at_unit_distance`` are the
    average SNRs a transmitter at distance 1 would see.
    """
    if not target_rate > 0:
        raise ValueError("target rate must be positive")
    rates = np.empty((grid.n1, grid.n2))
    for i, d1 in enumerate(grid.d1):
        for j, d2 in enumerate(grid.d2):
            rates[i, j] = sum_rate(model, snrs_at_unit_distance, Geometry(d1, d2, alpha), method)
    return CoverageResult(grid, target_rate, rates)
