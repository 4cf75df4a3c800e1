import math

import mpmath
import numpy as np
import pytest
from scipy import special

from ddmac import specfun
from ddmac.specfun import approx_error_by_decade, ei_neg, ei_neg_approx, exp_ei_neg


def ei_mp(x):
    mpmath.mp.dps = 40
    return float(mpmath.ei(-mpmath.mpf(x)))


def test_examples():
    assert ei_neg(1.0) == pytest.approx(-0.2193839344, rel=1e-9)
    assert ei_neg(10.0) == pytest.approx(-4.156968929685324e-06, rel=1e-10)
    assert ei_neg(1e-12) < ei_neg(1e-6) < -13


def test_matches_multiprecision():
    xs = np.logspace(-6, math.log10(50), 400)
    exact = np.array([ei_mp(x) for x in xs])
    assert np.max(np.abs(ei_neg(xs) / exact - 1)) <= 1e-10


def test_agrees_with_scipy_exp1():
    xs = np.linspace(0.01, 80, 300)
    assert np.allclose(ei_neg(xs), -special.exp1(xs), rtol=1e-12, atol=0)


def test_splice_continuity():
    s, cf = specfun._series(6.0), specfun._continued_fraction(6.0)
    assert abs(s - cf) / abs(ei_neg(6.0)) <= 1e-10


def test_negative_and_increasing():
    xs = np.logspace(-6, 2, 500)
    v = ei_neg(xs)
    assert np.all(v < 0) and np.all(np.diff(v) > 0)


def test_domain():
    for f in (ei_neg, ei_neg_approx, exp_ei_neg):
        with pytest.raises(ValueError):
            f(0.0)
        with pytest.raises(ValueError):
            f(-1.0)


def test_exp_scaled_large_argument():
    x = np.array([5.0, 10.0, 800.0])
    expected = -special.exp1(x) * np.exp(np.minimum(x, 700)) * [1, 1, 0]
    assert np.allclose(exp_ei_neg(x[:2]), expected[:2], rtol=1e-12)
    # e^x E1(x) ~ 1/x (1 - 1/x + 2/x^2 - 6/x^3 + 24/x^4)
    x = 800.0
    assert exp_ei_neg(x) == pytest.approx(-(1 - 1 / x + 2 / x**2 - 6 / x**3 + 24 / x**4) / x, rel=1e-12)


class TestApprox:
    def test_examples(self):
        assert ei_neg_approx(1.0) == pytest.approx(-0.886227 * math.exp(-1.621139), rel=1e-6)
        assert ei_neg_approx(1.0) == pytest.approx(-0.17519, abs=1e-5)
        assert ei_neg_approx(math.pi**2 / 16) == pytest.approx(-math.sqrt(math.pi) / 2 / math.e, rel=1e-14)
        assert ei_neg_approx(200.0) == pytest.approx(0.0, abs=1e-100)

    def test_sign_and_monotonicity(self):
        xs = np.linspace(1e-3, 50, 2000)
        a = ei_neg_approx(xs)
        assert np.all(a < 0) and np.all(np.diff(a) > 0)

    def test_error_table(self):
        rows = approx_error_by_decade(-3, 2)
        assert len(rows) == 5
        # the approximation is loose: tens of percent everywhere, ~100% far out
        assert all(0.2 < r[2] <= 1.0 for r in rows)
