import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from econforces.errors import TooShort, ZeroVariance
from econforces.inflation import acf_diagnosis, decompose_inflation, fit_ar, inflation_series
from econforces.series import MonthStamp, Series

from oracles import normal_equations_ols


def monthly(values, id="I"):
    m0 = MonthStamp(2011, 1)
    return Series(id, [m0.shift(i) for i in range(len(values))], values)


def ar_sample(rng, n, phi, c=0.0, sigma=1.0, burn=50):
    x = np.zeros(n + burn)
    p = len(phi)
    for t in range(p, n + burn):
        x[t] = c + sum(phi[k] * x[t - 1 - k] for k in range(p)) + sigma * rng.normal()
    return x[burn:]


def oracle_residuals(x, p):
    X = np.column_stack([x[p - k - 1:len(x) - k - 1] for k in range(p)])
    y = x[p:]
    o = normal_equations_ols(X, y, intercept=True)
    Xc = np.column_stack([np.ones(len(y)), X])
    return o["beta"], y - Xc @ o["beta"]


def assert_identity(dec):
    lookup = dec.I.as_dict()
    I = np.array([lookup[m] for m in dec.EI.months])
    assert dec.EI.months == dec.UI.months
    total = dec.EI.values + dec.UI.values
    # UI is defined as I - EI, so the sum is I up to one rounding of the addition
    assert np.all(np.abs(total - I) <= 2 * np.spacing(np.maximum(np.abs(I), np.abs(dec.EI.values))))


class TestInflationSeries:
    def test_constant(self):
        assert inflation_series(monthly([200.0] * 4)).values.tolist() == [0.0, 0.0, 0.0]

    def test_value(self):
        assert inflation_series(monthly([200.0, 201.0])).values[0] == pytest.approx(0.0049875, abs=1e-7)

    def test_one_percent_growth(self):
        I = inflation_series(monthly([100 * 1.01 ** i for i in range(12)]))
        np.testing.assert_allclose(I.values, math.log(1.01), atol=1e-12)
        assert I.id == "I"


class TestFitAR:
    def test_noiseless_recursion(self):
        x = [1.0, 2.0]
        for _ in range(40):
            x.append(0.5 * x[-1] - 0.3 * x[-2])
        ar = fit_ar(monthly(x, "x"), 2)
        assert ar.coefficients[0] == pytest.approx(0.5, abs=1e-10)
        assert ar.coefficients[1] == pytest.approx(-0.3, abs=1e-10)
        assert abs(ar.intercept) < 1e-10
        assert np.max(np.abs(ar.residuals.values)) < 1e-10

    def test_white_noise(self):
        e = np.random.default_rng(500).normal(size=500)
        ar = fit_ar(monthly(e, "e"), 2)
        assert np.all(np.abs(ar.coefficients) < 3 / math.sqrt(500))

    def test_shapes_and_months(self):
        x = monthly(np.random.default_rng(1).normal(size=30), "x")
        ar = fit_ar(x, 3)
        assert len(ar.fitted) == len(ar.residuals) == 27 == ar.nobs
        assert ar.residuals.months == x.months[3:]
        assert abs(ar.residuals.values.sum()) < 1e-9
        assert ar.sigma2 == pytest.approx(float(ar.residuals.values @ ar.residuals.values) / 27)

    def test_order_validation(self):
        x = monthly(np.arange(10.0) ** 2, "x")
        with pytest.raises(ValueError):
            fit_ar(x, 0)
        with pytest.raises(TooShort):
            fit_ar(monthly([1.0, 2.0, 3.0], "x"), 2)

    @pytest.mark.parametrize("seed", range(100))
    def test_oracle(self, seed):
        rng = np.random.default_rng(seed)
        p = 1 + seed % 3
        x = ar_sample(rng, int(rng.integers(20, 80)), rng.uniform(-0.4, 0.4, size=p), c=rng.normal())
        ar = fit_ar(monthly(x, "x"), p)
        beta, resid = oracle_residuals(x, p)
        got = np.concatenate([[ar.intercept], ar.coefficients])
        assert np.max(np.abs(got - beta) / np.abs(beta)) < 1e-9
        np.testing.assert_allclose(ar.residuals.values, resid, rtol=1e-9, atol=1e-12)

    def test_orthogonality(self):
        x = ar_sample(np.random.default_rng(3), 200, [0.6, -0.2])
        ar = fit_ar(monthly(x, "x"), 2)
        e = ar.residuals.values
        for k in (1, 2):
            lagged = x[2 - k:len(x) - k]
            assert abs(e @ lagged) <= 1e-8 * np.linalg.norm(e) * np.linalg.norm(lagged)


class TestDecompose:
    def test_linear_trend_differences(self):
        I = monthly([0.001 + 0.0001 * i for i in range(30)])
        dec = decompose_inflation(I)
        assert np.max(np.abs(dec.UI.values)) < 1e-10
        assert_identity(dec)

    def test_constant_inflation(self):
        dec = decompose_inflation(monthly([0.002] * 12))
        assert np.max(np.abs(dec.UI.values)) < 1e-15

    @pytest.mark.parametrize("mode", ["differences", "levels"])
    def test_identity_random(self, mode):
        rng = np.random.default_rng(11)
        for _ in range(20):
            I = monthly(ar_sample(rng, 60, [0.5, 0.2], c=0.002, sigma=0.003))
            assert_identity(decompose_inflation(I, mode=mode))

    def test_ui_matches_oracle(self):
        rng = np.random.default_rng(12)
        I = ar_sample(rng, 120, [0.4, -0.25], c=0.001, sigma=0.002)
        dec = decompose_inflation(monthly(I), mode="differences")
        _, resid = oracle_residuals(np.diff(I), 2)
        np.testing.assert_allclose(dec.UI.values, resid, rtol=1e-9, atol=1e-12)
        _, resid = oracle_residuals(I, 2)
        np.testing.assert_allclose(decompose_inflation(monthly(I), mode="levels").UI.values, resid, rtol=1e-9, atol=1e-12)

    def test_output_months(self):
        I = monthly(np.random.default_rng(2).normal(size=40))
        assert decompose_inflation(I, order=2).EI.months == I.months[3:]
        assert decompose_inflation(I, mode="levels", order=2).EI.months == I.months[2:]

    def test_bad_mode_and_short(self):
        with pytest.raises(ValueError):
            decompose_inflation(monthly(np.arange(10.0)), mode="expanding")
        with pytest.raises(TooShort):
            decompose_inflation(monthly([0.1, 0.2, 0.3, 0.1]))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.floats(-0.05, 0.05), st.sampled_from(["differences", "levels"]))
    def test_shift_equivariant(self, seed, c, mode):
        x = ar_sample(np.random.default_rng(seed), 50, [0.5, -0.2], sigma=0.003)
        a = decompose_inflation(monthly(x), mode=mode)
        b = decompose_inflation(monthly(x + c), mode=mode)
        np.testing.assert_allclose(b.UI.values, a.UI.values, rtol=0, atol=1e-10)


class TestAcfDiagnosis:
    def test_random_walk(self):
        x = np.cumsum(np.random.default_rng(21).normal(size=400))
        levels, diffs = acf_diagnosis(monthly(x), 24)
        assert levels.r[0] > 0.9
        assert abs(diffs.r[0]) < 0.2
        assert len(levels.r) == len(diffs.r) == 24

    def test_constant_increment(self):
        with pytest.raises(ZeroVariance):
            acf_diagnosis(monthly(np.arange(20.0) * 0.5), 3)

    def test_max_lag_too_long(self):
        with pytest.raises(TooShort):
            acf_diagnosis(monthly(np.random.default_rng(0).normal(size=10)), 10)
