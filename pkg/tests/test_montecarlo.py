import math

import numpy as np
import pytest

from ddmac.coverage import sum_rate_fgm_exact
from ddmac.dependence import DependenceModel
from ddmac.fading import AvgSnrPair, Geometry
from ddmac.montecarlo import McEstimate, _Moments, estimate_outage, estimate_sum_rate
from ddmac.outage import OutageQuery, outage_probability

GEOM = Geometry(1.0, 1.0, 3.5)
LN2 = math.log(2)


def op(model, snrs, geom, ro):
    return outage_probability(model, snrs, OutageQuery.from_geometry(geom, ro))


class TestMoments:
    def test_merge_matches_direct(self):
        x = np.random.default_rng(0).normal(3.0, 2.0, 10_001)
        acc = _Moments.of(x[:17])
        for a, b in [(17, 5000), (5000, 5001), (5001, 10_001)]:
            acc = acc.merge(_Moments.of(x[a:b]))
        assert acc.count == x.size
        assert acc.mean == pytest.approx(x.mean(), rel=1e-14)
        assert acc.m2 == pytest.approx(np.sum((x - x.mean()) ** 2), rel=1e-12)

    def test_within(self):
        e = McEstimate(0.5, 0.01, 10**4, 0)
        assert e.within(0.539) and not e.within(0.541)
        assert e.within(0.56, floor=0.07)


class TestOutage:
    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            estimate_outage(DependenceModel.independence(), AvgSnrPair(1, 1), GEOM, 0.5, n=999)

    def test_vanishing_rate(self):
        e = estimate_outage(DependenceModel.fgm(1.0), AvgSnrPair(1000, 1000), GEOM, 1e-9, n=10**4)
        assert e.mean == 0.0 and e.std_error == 0.0

    def test_independence_example(self):
        # beta = ln 2 on both links: Ro with 2^(2 Ro) - 1 = ln 2
        ro = math.log2(1 + LN2) / 2
        e = estimate_outage(DependenceModel.independence(), AvgSnrPair(1, 1), GEOM, ro, seed=3)
        assert e.n == 10**6 and e.within(0.75)
        assert e.std_error == pytest.approx(math.sqrt(0.75 * 0.25 / 10**6), rel=0.01)

    @pytest.mark.parametrize(
        "model",
        [DependenceModel.lower_frechet(), DependenceModel.upper_frechet(),
         DependenceModel.fgm(1.0), DependenceModel.frank(-30.0)],
        ids=str,
    )
    def test_matches_closed_form(self, model):
        s, g = AvgSnrPair(10.0, 20.0), Geometry(0.8, 1.3, 3.5)
        e = estimate_outage(model, s, g, 0.7, seed=9)
        assert e.within(op(model, s, g, 0.7))

    def test_deterministic_across_workers(self):
        args = (DependenceModel.frank(5.0), AvgSnrPair(3.0, 6.0), GEOM, 1.0)
        a = estimate_outage(*args, n=300_000, seed=42, chunk_size=40_000, workers=1)
        b = estimate_outage(*args, n=300_000, seed=42, chunk_size=40_000, workers=4)
        assert a == b
        c = estimate_outage(*args, n=300_000, seed=43, chunk_size=40_000)
        assert c.mean != a.mean

    def test_error_bar_coverage(self):
        model, s = DependenceModel.fgm(-0.6), AvgSnrPair(2.0, 5.0)
        truth = op(model, s, GEOM, 0.8)
        hits = sum(
            estimate_outage(model, s, GEOM, 0.8, n=10_000, seed=seed).within(truth, sigmas=2)
            for seed in range(100)
        )
        assert hits >= 90


class TestSumRate:
    def test_independence_example(self):
        e = estimate_sum_rate(DependenceModel.independence(), AvgSnrPair(2, 2), GEOM, seed=1)
        assert e.within(0.430173691135443)

    def test_vanishing_snr(self):
        e = estimate_sum_rate(DependenceModel.fgm(0.3), AvgSnrPair(1e-9, 1e-9), GEOM, n=10**4)
        assert e.mean < 1e-8

    @pytest.mark.parametrize("t", [-1.0, 1.0])
    def test_fgm_matches_exact(self, t):
        s, g = AvgSnrPair(1.0, 4.0), Geometry(1.0, 2.0, 3.5)
        e = estimate_sum_rate(DependenceModel.fgm(t), s, g, seed=5)
        assert e.within(sum_rate_fgm_exact(s, g, t))

    def test_deterministic_across_workers(self):
        args = (DependenceModel.lower_frechet(), AvgSnrPair(3.0, 6.0), GEOM)
        assert estimate_sum_rate(*args, n=200_000, seed=1, chunk_size=30_000, workers=3) == estimate_sum_rate(
            *args, n=200_000, seed=1, chunk_size=30_000)
