"""Monte-Carlo estimators for outage probability and ergodic sum rate.

Samples are drawn in fixed-size chunks, each from its own substream of the
seed, and reduced with an exact pairwise merge of ``(count, mean, M2)``.
Running the chunks on several threads therefore gives bit-identical results.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dependence import DEFAULT_CHUNK, DependenceModel, chunk_rng, chunk_sizes, sample_chunk
from .fading import AvgSnrPair, Geometry, pairs_to_snr

MIN_SAMPLES = 1000


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n: int
    seed: int

    def within(self, value: float, sigmas: float = 4.0, floor: float = 0.0) -> bool:
        return abs(self.mean - value) <= max(sigmas * self.std_error, floor)


@dataclass(frozen=True)
class _Moments:
    count: int
    mean: float
    m2: float

    @classmethod
    def of(cls, x: np.ndarray) -> "_Moments":
        m = float(x.mean())
        return cls(x.size, m, float(np.sum((x - m) ** 2)))

    def merge(self, other: "_Moments") -> "_Moments":
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / n
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / n
        return _Moments(n, mean, m2)


def _estimate(
    statistic: Callable[[np.ndarray], np.ndarray],
    model: DependenceModel,
    snrs: AvgSnrPair,
    n: int,
    seed: int,
    chunk_size: int,
    workers: int,
) -> McEstimate:
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {n}")
    sizes = chunk_sizes(n, chunk_size)

    def run(i):
        pairs = sample_chunk(model, sizes[i], chunk_rng(seed, i))
        return _Moments.of(statistic(pairs_to_snr(pairs, snrs)))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    # strictly left-to-right so the float result does not depend on scheduling
    acc = parts[0]
    for p in parts[1:]:
        acc = acc.merge(p)
    var = acc.m2 / (acc.count - 1)
    return McEstimate(acc.mean, math.sqrt(var / acc.count), acc.count, seed)


def estimate_outage(
    model: DependenceModel,
    snrs: AvgSnrPair,
    geom: Geometry,
    ro: float,
    n: int = 10**6,
    seed: int = 0,
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> McEstimate:
    """Fraction of samples with min(gamma1/L1, gamma2/L2) <= 2^(2 Ro) - 1."""
    if not ro > 0:
        raise ValueError("rate threshold must be positive")
    thresh = math.expm1(2.0 * ro * math.log(2.0))
    l1, l2 = geom.loss1, geom.loss2

    def indicator(g):
        return (np.minimum(g[:, 0] / l1, g[:, 1] / l2) <= thresh).astype(float)

    return _estimate(indicator, model, snrs, n, seed, chunk_size, workers)


def estimate_sum_rate(
    model: DependenceModel,
    snrs: AvgSnrPair,
    geom: Geometry,
    n: int = 10**6,
    seed: int = 0,
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> McEstimate:
    """Sample mean of 1/2 log2(1 + min(gamma1/L1, gamma2/L2))."""
    l1, l2 = geom.loss1, geom.loss2

    def rate(g):
        return 0.5 * np.log2(1.0 + np.minimum(g[:, 0] / l1, g[:, 1] / l2))

    return _estimate(rate, model, snrs, n, seed, chunk_size, workers)
