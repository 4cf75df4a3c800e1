"""Outage probability of the two-user doubly dirty MAC.

The sum rate is bottlenecked by the weaker normalised SNR, so an outage at
rate ``Ro`` happens iff ``gamma1 <= beta1`` or ``gamma2 <= beta2`` with
``beta_i = d_i**alpha * (2**(2 Ro) - 1)``. Hence

    P_out = 1 - Chat(exp(-beta1/gbar1), exp(-beta2/gbar2))

for any copula, where Chat is the survival copula. ``outage_generic`` is
that expression; the family-specific functions are its expansions and
must agree with it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dependence import DependenceModel, Family, frank_log_term, survival_copula
from .fading import AvgSnrPair, Geometry


@dataclass(frozen=True)
class OutageQuery:
    """Target rate ``rate_threshold`` (bits/use) and the SNR thresholds it implies."""

    rate_threshold: float
    beta1: float
    beta2: float

    def __post_init__(self):
        if not self.rate_threshold > 0:
            raise ValueError("rate threshold must be positive")
        if not (self.beta1 > 0 and self.beta2 > 0):
            raise ValueError("SNR thresholds must be positive")

    @classmethod
    def from_geometry(cls, geom: Geometry, ro: float) -> "OutageQuery":
        return cls(ro, *beta_thresholds(geom, ro))


def beta_thresholds(geom: Geometry, ro: float) -> tuple[float, float]:
    if not ro > 0:
        raise ValueError(f"rate threshold must be positive, got {ro}")
    # 2**(2 Ro) - 1 via expm1 keeps precision for tiny Ro
    base = math.expm1(2.0 * ro * math.log(2.0))
    return geom.loss1 * base, geom.loss2 * base


def _survivals(snrs: AvgSnrPair, q: OutageQuery) -> tuple[float, float]:
    return math.exp(-q.beta1 / snrs.gbar1), math.exp(-q.beta2 / snrs.gbar2)


def is_interior(snrs: AvgSnrPair, q: OutageQuery, margin: float = 1e-3) -> bool:
    """True when both link survivals lie in [margin, 1 - margin].

    Outside this band every family's outage saturates at 0 or 1 and the
    dependence orderings collapse to ties.
    """
    return all(margin <= s <= 1.0 - margin for s in _survivals(snrs, q))


def _prob(p: float) -> float:
    assert -1e-9 <= p <= 1 + 1e-9, f"outage formula produced {p}"
    return min(max(p, 0.0), 1.0)


def outage_generic(model: DependenceModel, snrs: AvgSnrPair, q: OutageQuery) -> float:
    s1, s2 = _survivals(snrs, q)
    return _prob(1.0 - survival_copula(model, s1, s2))


def outage_lower_fh(snrs: AvgSnrPair, q: OutageQuery) -> float:
    s1, s2 = _survivals(snrs, q)
    return _prob(1.0 - max(s1 + s2 - 1.0, 0.0))


def outage_upper_fh(snrs: AvgSnrPair, q: OutageQuery) -> float:
    s1, s2 = _survivals(snrs, q)
    return _prob(1.0 - min(s1, s2))


def outage_frank(snrs: AvgSnrPair, q: OutageQuery, theta_fr: float) -> float:
    """Frank-copula outage.

    2 - s1 - s2 + (1/θ) ln[1 + (e^{-θ(1-s1)}-1)(e^{-θ(1-s2)}-1)/(e^{-θ}-1)],
    with s_i the marginal survival at the threshold. Both survivals enter
    with a minus sign.
    """
    if theta_fr == 0 or not math.isfinite(theta_fr):
        raise ValueError("Frank parameter must be finite and nonzero")
    s1, s2 = _survivals(snrs, q)
    # (1 - s) as -expm1 keeps digits when the threshold is tiny
    f1 = -math.expm1(-q.beta1 / snrs.gbar1)
    f2 = -math.expm1(-q.beta2 / snrs.gbar2)
    log_term = float(frank_log_term(f1, f2, theta_fr))
    return _prob(2.0 - s1 - s2 + log_term / theta_fr)


def outage_fgm(snrs: AvgSnrPair, q: OutageQuery, theta_f: float) -> float:
    if not -1.0 <= theta_f <= 1.0:
        raise ValueError(f"FGM parameter must lie in [-1, 1], got {theta_f}")
    x1, x2 = q.beta1 / snrs.gbar1, q.beta2 / snrs.gbar2
    return _prob(1.0 - math.exp(-(x1 + x2)) * (1.0 + theta_f * math.expm1(-x1) * math.expm1(-x2)))


def outage_probability(model: DependenceModel, snrs: AvgSnrPair, q: OutageQuery) -> float:
    """Dispatch to the family's closed form."""
    fam = model.family
    if fam is Family.LOWER_FRECHET:
        return outage_lower_fh(snrs, q)
    if fam is Family.UPPER_FRECHET:
        return outage_upper_fh(snrs, q)
    if fam is Family.FRANK:
        return outage_frank(snrs, q, model.theta)
    if fam is Family.FGM:
        return outage_fgm(snrs, q, model.theta)
    return outage_fgm(snrs, q, 0.0)


def outage_curve(model: DependenceModel, snrs_list, geom: Geometry, ro) -> np.ndarray:
    """Outage over matching sequences of ``AvgSnrPair`` and rates (broadcast)."""
    snrs_list = list(snrs_list) if not isinstance(snrs_list, AvgSnrPair) else [snrs_list]
    ro = np.atleast_1d(np.asarray(ro, dtype=float))
    if len(snrs_list) == 1:
        snrs_list = snrs_list * ro.size
    if ro.size == 1:
        ro = np.repeat(ro, len(snrs_list))
    return np.array(
        [outage_probability(model, s, OutageQuery.from_geometry(geom, r)) for s, r in zip(snrs_list, ro)]
    )
