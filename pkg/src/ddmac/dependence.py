"""Bivariate copula families.

Five dependence structures are supported: independence, the two
Fréchet–Hoeffding bounds, Frank and Farlie–Gumbel–Morgenstern (FGM).
Every evaluation function is vectorised over ``u1``/``u2`` with numpy
broadcasting.

Notes
-----
Frank parameters with ``0 < |theta| < 1e-8`` are mapped to the
independence family at construction time; the closed form loses all
significant digits there and the two copulas agree to ~1e-9 anyway.
``theta == 0`` itself is rejected.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

FRANK_ZERO_CUTOFF = 1e-8
DEFAULT_CHUNK = 1 << 17


class NoDensity(ValueError):
    """Raised when a density-based operation is requested for a Fréchet bound."""


class Family(str, enum.Enum):
    INDEPENDENCE = "independence"
    LOWER_FRECHET = "lower_fh"
    UPPER_FRECHET = "upper_fh"
    FRANK = "frank"
    FGM = "fgm"


@dataclass(frozen=True)
class DependenceModel:
    """A copula family together with its dependence parameter.

    Use the constructors ``independence()``, ``lower_frechet()``,
    ``upper_frechet()``, ``frank(theta)`` and ``fgm(theta)`` rather than
    building instances by hand.
    """

    family: Family
    theta: float | None = None

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        if family in (Family.FRANK, Family.FGM):
            if self.theta is None or not np.isfinite(self.theta):
                raise ValueError(f"{family.value} copula needs a finite parameter")
            theta = float(self.theta)
            if family is Family.FGM and not -1.0 <= theta <= 1.0:
                raise ValueError(f"FGM parameter must lie in [-1, 1], got {theta}")
            if family is Family.FRANK:
                if theta == 0.0:
                    raise ValueError("Frank parameter must be nonzero")
                if abs(theta) < FRANK_ZERO_CUTOFF:
                    object.__setattr__(self, "family", Family.INDEPENDENCE)
                    theta = None
            object.__setattr__(self, "theta", theta)
        elif self.theta is not None:
            raise ValueError(f"{family.value} takes no parameter")

    @classmethod
    def independence(cls) -> "DependenceModel":
        return cls(Family.INDEPENDENCE)

    @classmethod
    def lower_frechet(cls) -> "DependenceModel":
        return cls(Family.LOWER_FRECHET)

    @classmethod
    def upper_frechet(cls) -> "DependenceModel":
        return cls(Family.UPPER_FRECHET)

    @classmethod
    def frank(cls, theta: float) -> "DependenceModel":
        return cls(Family.FRANK, theta)

    @classmethod
    def fgm(cls, theta: float) -> "DependenceModel":
        return cls(Family.FGM, theta)

    @property
    def has_density(self) -> bool:
        return self.family not in (Family.LOWER_FRECHET, Family.UPPER_FRECHET)

    @property
    def label(self) -> str:
        if self.theta is None:
            return self.family.value
        return f"{self.family.value}({self.theta:g})"

    def __str__(self):
        return self.label


class UnitSquarePoint(NamedTuple):
    u1: float
    u2: float

    @classmethod
    def checked(cls, u1: float, u2: float) -> "UnitSquarePoint":
        _check_unit(u1, "u1")
        _check_unit(u2, "u2")
        return cls(float(u1), float(u2))


def _check_unit(u, name="u"):
    u = np.asarray(u, dtype=float)
    if np.any(~((u >= 0.0) & (u <= 1.0))):
        raise ValueError(f"{name} must lie in [0, 1]")
    return u


def _require_density(model: DependenceModel):
    if not model.has_density:
        raise NoDensity(f"{model.family.value} has no density")


# --- Frank helpers (theta > 0 unless stated) --------------------------------

def frank_log_term(x, y, theta):
    """ln[1 + (e^{-θx}-1)(e^{-θy}-1)/(e^{-θ}-1)], accurate for large |θ|.

    For ``theta > 0`` the argument of the logarithm can approach zero, in
    which case ``log1p`` of a rounded ``-1 + tiny`` is useless; the
    logarithm is then taken of the ratio rebuilt from positive terms.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax, ay, a = np.expm1(-theta * x), np.expm1(-theta * y), np.expm1(-theta)
    ratio = ax * ay / a
    if theta < 0:
        return np.log1p(ratio)
    # 1 + ratio = [e^{-θx}(1-e^{-θy}) + e^{-θy}(1-e^{-θ(1-y)})] / (1-e^{-θ})
    num = -np.exp(-theta * x) * ay - np.exp(-theta * y) * np.expm1(-theta * (1.0 - y))
    with np.errstate(divide="ignore"):
        return np.where(ratio > -0.5, np.log1p(ratio), np.log(num) - np.log(-a))


def _frank_cdf(u1, u2, theta):
    if theta < -300.0:
        return u1 - _frank_cdf(u1, 1.0 - u2, -theta)
    return -frank_log_term(u1, u2, theta) / theta


def _frank_denominator(u1, u2, theta):
    # (e^{-θ}-1) + (e^{-θu1}-1)(e^{-θu2}-1), written as a sum of two
    # positive terms (negated) so it keeps relative accuracy for θ > 0.
    return np.exp(-theta * u1) * np.expm1(-theta * u2) + np.exp(-theta * u2) * np.expm1(
        -theta * (1.0 - u2)
    )


def _frank_density(u1, u2, theta):
    if theta < 0:
        return _frank_density(u1, 1.0 - u2, -theta)
    den = _frank_denominator(u1, u2, theta)
    return -theta * np.expm1(-theta) * np.exp(-theta * (u1 + u2)) / den**2


def _frank_conditional(u1, u2, theta):
    if theta < 0:
        return 1.0 - _frank_conditional(u1, 1.0 - u2, -theta)
    den = _frank_denominator(u1, u2, theta)
    with np.errstate(invalid="ignore"):
        h = np.exp(-theta * u1) * np.expm1(-theta * u2) / den
    # u2 == 0 gives 0/den with den != 0; the only 0/0 is unreachable for θ > 0.
    return np.clip(np.nan_to_num(h), 0.0, 1.0)


def _frank_inverse(u1, p, theta):
    if theta < 0:
        return 1.0 - _frank_inverse(u1, 1.0 - p, -theta)
    e1 = np.exp(-theta * u1)
    base = p + (1.0 - p) * e1
    arg = p * np.expm1(-theta) / base
    with np.errstate(divide="ignore"):
        stable = np.log(p * np.exp(-theta) + (1.0 - p) * e1) - np.log(base)
        v = -np.where(arg > -0.5, np.log1p(arg), stable) / theta
    return np.clip(v, 0.0, 1.0)


# --- public evaluation API --------------------------------------------------

def copula_cdf(model: DependenceModel, u1, u2):
    """Copula C(u1, u2).

    Parameters
    ----------
    model : DependenceModel
    u1, u2 : float or ndarray
        Coordinates in [0, 1]; broadcast against each other.

    Returns
    -------
    float or ndarray
        Values in the Fréchet–Hoeffding band ``[max(u1+u2-1, 0), min(u1, u2)]``.
    """
    u1 = _check_unit(u1, "u1")
    u2 = _check_unit(u2, "u2")
    fam = model.family
    if fam is Family.INDEPENDENCE:
        c = u1 * u2
    elif fam is Family.LOWER_FRECHET:
        c = np.maximum(u1 + u2 - 1.0, 0.0)
    elif fam is Family.UPPER_FRECHET:
        c = np.minimum(u1, u2)
    elif fam is Family.FRANK:
        c = _frank_cdf(u1, u2, model.theta)
    else:
        c = u1 * u2 * (1.0 + model.theta * (1.0 - u1) * (1.0 - u2))
    # round-off can leave the band by an ulp; anything larger is a formula bug
    lo = np.maximum(u1 + u2 - 1.0, 0.0)
    hi = np.minimum(u1, u2)
    assert np.all((c >= lo - 1e-9) & (c <= hi + 1e-9)), "copula left the Fréchet band"
    return _scalar(np.clip(c, lo, hi))


def survival_copula(model: DependenceModel, u1, u2):
    """Survival copula u1 + u2 - 1 + C(1-u1, 1-u2), built from ``copula_cdf``."""
    u1 = _check_unit(u1, "u1")
    u2 = _check_unit(u2, "u2")
    c = copula_cdf(model, 1.0 - u1, 1.0 - u2)
    lo = np.maximum(u1 + u2 - 1.0, 0.0)
    return _scalar(np.clip(u1 + u2 - 1.0 + c, lo, np.minimum(u1, u2)))


def copula_density(model: DependenceModel, u1, u2):
    """Mixed partial derivative of the copula; raises ``NoDensity`` for the bounds."""
    _require_density(model)
    u1 = _check_unit(u1, "u1")
    u2 = _check_unit(u2, "u2")
    if model.family is Family.INDEPENDENCE:
        return _scalar(np.ones(np.broadcast(u1, u2).shape))
    if model.family is Family.FGM:
        return _scalar(1.0 + model.theta * (1.0 - 2.0 * u1) * (1.0 - 2.0 * u2))
    return _scalar(_frank_density(u1, u2, model.theta))


def conditional_cdf(model: DependenceModel, u1, u2):
    """dC/du1 at (u1, u2): the CDF of U2 given U1 = u1."""
    _require_density(model)
    u1 = _check_unit(u1, "u1")
    u2 = _check_unit(u2, "u2")
    if model.family is Family.INDEPENDENCE:
        return _scalar(np.broadcast_to(u2, np.broadcast(u1, u2).shape).copy())
    if model.family is Family.FGM:
        a = model.theta * (1.0 - 2.0 * u1)
        return _scalar(u2 * (1.0 + a * (1.0 - u2)))
    return _scalar(_frank_conditional(u1, u2, model.theta))


def inverse_conditional_cdf(model: DependenceModel, u1, p):
    """Solve ``conditional_cdf(model, u1, u2) = p`` for u2."""
    _require_density(model)
    u1 = _check_unit(u1, "u1")
    p = _check_unit(p, "p")
    if model.family is Family.INDEPENDENCE:
        return _scalar(np.broadcast_to(p, np.broadcast(u1, p).shape).copy())
    if model.family is Family.FGM:
        # a*v^2 - (1+a)*v + p = 0; conjugate form of the root inside [0, 1],
        # which also covers a -> 0 without a special case.
        a = model.theta * (1.0 - 2.0 * u1)
        b = 1.0 + a
        v = 2.0 * p / (b + np.sqrt(np.maximum(b * b - 4.0 * a * p, 0.0)))
        return _scalar(np.clip(v, 0.0, 1.0))
    return _scalar(_frank_inverse(u1, p, model.theta))


# --- sampling ---------------------------------------------------------------

def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    """Independent generator for chunk ``chunk`` of the stream rooted at ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def chunk_sizes(n: int, chunk_size: int = DEFAULT_CHUNK) -> list[int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    full, rest = divmod(n, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def sample_chunk(model: DependenceModel, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` pairs by conditional inversion; returns shape (size, 2)."""
    u1 = rng.random(size)
    v = rng.random(size)
    fam = model.family
    if fam is Family.LOWER_FRECHET:
        u2 = 1.0 - u1
    elif fam is Family.UPPER_FRECHET:
        u2 = u1.copy()
    else:
        u2 = inverse_conditional_cdf(model, u1, v)
    return np.column_stack([u1, u2])


def iter_pair_chunks(
    model: DependenceModel, n: int, seed: int, chunk_size: int = DEFAULT_CHUNK
) -> Iterator[np.ndarray]:
    for i, size in enumerate(chunk_sizes(n, chunk_size)):
        yield sample_chunk(model, size, chunk_rng(seed, i))


def sample_pairs(
    model: DependenceModel, n: int, seed: int = 0, chunk_size: int = DEFAULT_CHUNK
) -> np.ndarray:
    """``n`` i.i.d. pairs from the copula, shape (n, 2).

    Deterministic in ``(seed, chunk_size)``: chunk ``i`` always draws from
    its own substream, so evaluating chunks in parallel changes nothing.
    """
    return np.concatenate(list(iter_pair_chunks(model, n, seed, chunk_size)))


def empirical_copula(pairs: np.ndarray, grid) -> np.ndarray:
    """Empirical C_n(a, b) = P(U1 <= a, U2 <= b) on ``grid x grid``."""
    grid = np.asarray(grid, dtype=float)
    i = np.searchsorted(grid, pairs[:, 0], side="left")
    j = np.searchsorted(grid, pairs[:, 1], side="left")
    counts = np.zeros((grid.size + 1, grid.size + 1))
    np.add.at(counts, (i, j), 1.0)
    return np.cumsum(np.cumsum(counts, axis=0), axis=1)[:-1, :-1] / len(pairs)


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x
