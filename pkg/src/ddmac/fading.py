"""Rayleigh-fading SNR marginals and their copula coupling.

With Rayleigh fading the instantaneous SNR of each link is exponential
with mean ``gbar``. All SNRs here are linear, never dB.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dependence import (
    DEFAULT_CHUNK,
    DependenceModel,
    copula_cdf,
    copula_density,
    iter_pair_chunks,
    survival_copula,
)


@dataclass(frozen=True)
class AvgSnrPair:
    """Average (linear) SNRs of the two links."""

    gbar1: float
    gbar2: float

    def __post_init__(self):
        for name in ("gbar1", "gbar2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v}")

    def swapped(self) -> "AvgSnrPair":
        return AvgSnrPair(self.gbar2, self.gbar1)


@dataclass(frozen=True)
class Geometry:
    """Transmitter distances and path-loss exponent (``alpha > 2``)."""

    d1: float
    d2: float
    alpha: float

    def __post_init__(self):
        if not (self.d1 > 0 and self.d2 > 0):
            raise ValueError("distances must be positive")
        if not (math.isfinite(self.alpha) and self.alpha > 2):
            raise ValueError(f"path-loss exponent must exceed 2, got {self.alpha}")

    @property
    def loss1(self) -> float:
        return self.d1**self.alpha

    @property
    def loss2(self) -> float:
        return self.d2**self.alpha

    def swapped(self) -> "Geometry":
        return Geometry(self.d2, self.d1, self.alpha)


def _check_snr(gbar, gamma):
    if not gbar > 0:
        raise ValueError("average SNR must be positive")
    gamma = np.asarray(gamma, dtype=float)
    if np.any(~(gamma >= 0)):
        raise ValueError("SNR must be nonnegative")
    return gamma


def marginal_cdf(gbar: float, gamma):
    gamma = _check_snr(gbar, gamma)
    return _scalar(-np.expm1(-gamma / gbar))


def marginal_survival(gbar: float, gamma):
    gamma = _check_snr(gbar, gamma)
    return _scalar(np.exp(-gamma / gbar))


def marginal_pdf(gbar: float, gamma):
    gamma = _check_snr(gbar, gamma)
    return _scalar(np.exp(-gamma / gbar) / gbar)


def quantile(gbar: float, u):
    """Inverse of ``marginal_cdf``: ``-gbar * log(1 - u)`` for u in [0, 1)."""
    if not gbar > 0:
        raise ValueError("average SNR must be positive")
    u = np.asarray(u, dtype=float)
    if np.any(~((u >= 0) & (u < 1))):
        raise ValueError("u must lie in [0, 1)")
    return _scalar(-gbar * np.log1p(-u))


def joint_pdf(model: DependenceModel, snrs: AvgSnrPair, g1, g2):
    """f(g1) f(g2) c(F(g1), F(g2)); raises ``NoDensity`` for the Fréchet bounds."""
    f1 = marginal_pdf(snrs.gbar1, g1)
    f2 = marginal_pdf(snrs.gbar2, g2)
    c = copula_density(model, marginal_cdf(snrs.gbar1, g1), marginal_cdf(snrs.gbar2, g2))
    return _scalar(np.asarray(f1 * f2 * c))


def joint_cdf(model: DependenceModel, snrs: AvgSnrPair, g1, g2):
    return copula_cdf(model, marginal_cdf(snrs.gbar1, g1), marginal_cdf(snrs.gbar2, g2))


def joint_survival(model: DependenceModel, snrs: AvgSnrPair, g1, g2):
    """P(gamma1 > g1, gamma2 > g2) via the survival copula."""
    return survival_copula(
        model, marginal_survival(snrs.gbar1, g1), marginal_survival(snrs.gbar2, g2)
    )


def pairs_to_snr(pairs: np.ndarray, snrs: AvgSnrPair) -> np.ndarray:
    # u == 1 is a measure-zero event; it would map to +inf, so nudge it
    u = np.minimum(pairs, np.nextafter(1.0, 0.0))
    return np.column_stack([quantile(snrs.gbar1, u[:, 0]), quantile(snrs.gbar2, u[:, 1])])


def iter_snr_chunks(model, snrs, n, seed, chunk_size=DEFAULT_CHUNK):
    for pairs in iter_pair_chunks(model, n, seed, chunk_size):
        yield pairs_to_snr(pairs, snrs)


def sample_snr_pairs(
    model: DependenceModel, snrs: AvgSnrPair, n: int, seed: int = 0, chunk_size: int = DEFAULT_CHUNK
) -> np.ndarray:
    """Correlated exponential SNR pairs, shape (n, 2)."""
    return np.concatenate(list(iter_snr_chunks(model, snrs, n, seed, chunk_size)))


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x
