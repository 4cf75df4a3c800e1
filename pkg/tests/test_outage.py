import itertools
import math

import numpy as np
import pytest

from ddmac.dependence import DependenceModel
from ddmac.fading import AvgSnrPair, Geometry
from ddmac.outage import (
    OutageQuery,
    beta_thresholds,
    outage_fgm,
    outage_frank,
    outage_generic,
    outage_lower_fh,
    outage_probability,
    outage_upper_fh,
)

LN2 = math.log(2)
GBARS = [0.5, 1.0, 5.0, 10.0, 50.0]
RATES = [0.1, 0.5, 1.0, 2.0]
GEOM = Geometry(1.0, 1.0, 3.5)


def q_from_survivals(s1, s2, snrs=AvgSnrPair(1, 1)):
    # thresholds chosen so that exp(-beta/gbar) equals the given survivals
    return OutageQuery(1.0, -math.log(s1) * snrs.gbar1, -math.log(s2) * snrs.gbar2)


def grid():
    for g1, g2, ro in itertools.product(GBARS, GBARS, RATES):
        yield AvgSnrPair(g1, g2), OutageQuery.from_geometry(GEOM, ro)


class TestThresholds:
    def test_examples(self):
        assert beta_thresholds(Geometry(1, 1, 3.5), 0.5) == pytest.approx((1.0, 1.0), rel=1e-15)
        assert beta_thresholds(Geometry(2, 1, 3.0), 0.5)[0] == pytest.approx(8.0)
        b = beta_thresholds(Geometry(1, 1, 4.0), 1e-9)
        assert 0 < b[0] < 1e-8

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(ValueError):
            beta_thresholds(GEOM, 0.0)


class TestExamples:
    def test_generic(self):
        q = OutageQuery(1.0, LN2, LN2)
        s = AvgSnrPair(1, 1)
        assert outage_generic(DependenceModel.independence(), s, q) == pytest.approx(0.75)
        assert outage_generic(DependenceModel.fgm(1.0), s, q) == pytest.approx(0.6875)
        tiny = OutageQuery.from_geometry(GEOM, 1e-12)
        for m in (DependenceModel.lower_frechet(), DependenceModel.frank(-7.0)):
            assert outage_generic(m, s, tiny) == pytest.approx(0.0, abs=1e-10)

    def test_bounds(self):
        assert outage_lower_fh(AvgSnrPair(1, 1), q_from_survivals(0.5, 0.5)) == 1.0
        assert outage_lower_fh(AvgSnrPair(1, 1), q_from_survivals(0.9, 0.9)) == pytest.approx(0.2)
        assert outage_upper_fh(AvgSnrPair(1, 1), OutageQuery(1.0, 1.0, 1.0)) == pytest.approx(1 - math.exp(-1))
        s = AvgSnrPair(2.0, 3.0)
        q = OutageQuery(1.0, 0.7, 1e-300)
        assert outage_upper_fh(s, q) == pytest.approx(-math.expm1(-0.7 / 2.0))

    def test_fgm(self):
        q = q_from_survivals(0.5, 0.5)
        s = AvgSnrPair(1, 1)
        assert outage_fgm(s, q, 0.0) == outage_generic(DependenceModel.independence(), s, q)
        assert outage_fgm(s, q, 1.0) == pytest.approx(0.6875, abs=1e-15)
        assert outage_fgm(s, q, -1.0) == pytest.approx(0.8125, abs=1e-15)
        with pytest.raises(ValueError):
            outage_fgm(s, q, 1.1)

    def test_frank_limits(self):
        for s, q in grid():
            ind = outage_generic(DependenceModel.independence(), s, q)
            assert outage_frank(s, q, 1e-6) == pytest.approx(ind, abs=1e-4)
            assert outage_frank(s, q, 50.0) == pytest.approx(outage_upper_fh(s, q), abs=0.02)
        with pytest.raises(ValueError):
            outage_frank(AvgSnrPair(1, 1), OutageQuery(1, 1, 1), 0.0)

    def test_frank_sign_of_survival_terms(self):
        # both survivals enter with a minus sign; a "+s2" expansion would be
        # off by 2*s2 here
        s, q = AvgSnrPair(10, 10), OutageQuery(1.0, 1.0, 1.0)
        val = outage_frank(s, q, 30.0)
        assert val == pytest.approx(outage_generic(DependenceModel.frank(30.0), s, q), abs=1e-14)
        assert 0.0 <= val <= 1.0


class TestAgreement:
    @pytest.mark.parametrize(
        "model",
        [DependenceModel.lower_frechet(), DependenceModel.upper_frechet()]
        + [DependenceModel.frank(t) for t in (-50, -30, -5, -0.5, 0.5, 5, 30, 50)]
        + [DependenceModel.fgm(t) for t in (-1, -0.5, 0, 0.5, 1)],
        ids=str,
    )
    def test_closed_forms_match_generic(self, model):
        worst = max(abs(outage_probability(model, s, q) - outage_generic(model, s, q)) for s, q in grid())
        assert worst <= 1e-12

    def test_sandwich_and_ordering(self):
        models = [DependenceModel.frank(t) for t in (-30, -1, 1, 30)] + [
            DependenceModel.fgm(t) for t in (-1, 0, 1)
        ]
        for s, q in grid():
            lo, hi = outage_upper_fh(s, q), outage_lower_fh(s, q)
            for m in models:
                assert lo - 1e-12 <= outage_probability(m, s, q) <= hi + 1e-12
            f = [outage_fgm(s, q, t) for t in (1.0, 0.0, -1.0)]
            assert f[0] <= f[1] <= f[2]


class TestMonotonicity:
    MODELS = [DependenceModel.frank(30.0), DependenceModel.fgm(-1.0), DependenceModel.lower_frechet()]

    @pytest.mark.parametrize("model", MODELS, ids=str)
    def test_in_snr(self, model):
        ro = 0.7
        q = OutageQuery.from_geometry(GEOM, ro)
        vals = [outage_probability(model, AvgSnrPair(g, 3.0), q) for g in np.logspace(-1, 3, 40)]
        assert np.all(np.diff(vals) <= 1e-15)
        vals = [outage_probability(model, AvgSnrPair(3.0, g), q) for g in np.logspace(-1, 3, 40)]
        assert np.all(np.diff(vals) <= 1e-15)

    @pytest.mark.parametrize("model", MODELS, ids=str)
    def test_in_rate_distance_alpha(self, model):
        s = AvgSnrPair(20.0, 40.0)

        def p(d1=1.0, d2=1.0, alpha=3.5, ro=0.5):
            return outage_probability(model, s, OutageQuery.from_geometry(Geometry(d1, d2, alpha), ro))

        for key, values in [
            ("ro", np.linspace(0.05, 5, 40)),
            ("d1", np.linspace(0.2, 3, 40)),
            ("d2", np.linspace(0.2, 3, 40)),
            ("alpha", np.linspace(2.1, 6, 40)),
        ]:
            vals = [p(**{key: v, "d1": 1.5} if key == "alpha" else {key: v}) for v in values]
            assert np.all(np.diff(vals) >= -1e-15), key

    def test_limits(self):
        # near Ro = 0 the outage is ~ beta/gbar, so 1e-6 at Ro = 1e-4 needs gbar ~ 30 dB
        s = AvgSnrPair(1000.0, 2000.0)
        for m in self.MODELS + [DependenceModel.fgm(1.0), DependenceModel.upper_frechet()]:
            assert outage_probability(m, s, OutageQuery.from_geometry(GEOM, 1e-4)) <= 1e-6
            assert outage_probability(m, s, OutageQuery.from_geometry(GEOM, 20.0)) >= 0.999
