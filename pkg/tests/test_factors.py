import math

import numpy as np
import pytest

from econforces import factors as fc
from econforces.errors import EmptyIntersection, TooShort, UnconstructibleFactors
from econforces.ingest import RawDataset, Role, assemble, load_manifest, simple_returns
from econforces.series import MonthStamp, Series

from conftest import FIXTURE_DIR


def monthly(values, id="x", start=(2011, 1)):
    m0 = MonthStamp(*start)
    return Series(id, [m0.shift(i) for i in range(len(values))], values)


@pytest.fixture(scope="module")
def raw():
    return assemble(load_manifest(FIXTURE_DIR / "manifest.toml"))


class TestBuilders:
    def test_og(self):
        assert fc.build_og(monthly([50.0, 55.0])).values[0] == pytest.approx(0.09531, abs=1e-5)
        assert fc.build_og(monthly([7.0, 7.0, 7.0])).values.tolist() == [0.0, 0.0]

    def test_mp_yp(self):
        ip = monthly([100 * 1.001 ** i for i in range(25)])
        np.testing.assert_allclose(fc.build_mp(ip).values, math.log(1.001), atol=1e-13)
        yp = fc.build_yp(ip)
        assert len(yp) == 13 and yp.months[0] == MonthStamp(2012, 1)
        np.testing.assert_allclose(yp.values, 12 * math.log(1.001), atol=1e-12)
        with pytest.raises(TooShort):
            fc.build_yp(monthly(np.ones(12) * 100))

    def test_rho(self):
        tb = monthly([0.004, 0.005], id="TB")
        I = monthly([0.002, 0.001], id="I")
        rho = fc.build_rho(tb, I)
        assert rho.points == [(MonthStamp(2011, 2), pytest.approx(0.003, abs=1e-15))]

    def test_rho_zero_inflation_and_shift(self):
        tb = monthly([0.01, 0.02, 0.03], id="TB")
        np.testing.assert_array_equal(fc.build_rho(tb, monthly([0.0] * 3)).values, [0.01, 0.02])
        I = monthly([0.01, 0.02, 0.03], start=(2011, 2))
        assert np.all(fc.build_rho(tb, I).values == 0.0)

    def test_upr(self):
        low, lgb = monthly([0.030]), monthly([0.005])
        assert fc.build_upr(low, lgb).values[0] == pytest.approx(0.025, abs=1e-15)
        assert fc.build_upr(low, low).values[0] == 0.0
        assert fc.build_upr(lgb, low).values[0] == -fc.build_upr(low, lgb).values[0]

    def test_uts(self):
        lgb = monthly([0.02, 0.023], id="LGB")
        tb = monthly([0.004, 0.009], id="TB")
        assert fc.build_uts(lgb, tb).values[0] == pytest.approx(0.019, abs=1e-15)
        shifted = fc.build_uts(lgb.with_values(lgb.values + 0.5), tb)
        assert shifted.values[0] - fc.build_uts(lgb, tb).values[0] == pytest.approx(0.5, abs=1e-15)
        same = fc.build_uts(monthly([0.004, 0.009], start=(2011, 2)), tb)
        assert np.all(same.values == 0.0)

    def test_disjoint(self):
        with pytest.raises(EmptyIntersection):
            fc.build_upr(monthly([1.0]), monthly([1.0], start=(2015, 1)))


class TestFactorSet:
    def test_fixture(self, raw):
        fs = fc.build_factor_set(raw)
        assert fs.columns == ["SPYRET", "TB", "OG", "MP", "EI", "UI", "RHO", "UPR", "UTS"]
        assert fs.nobs == 126
        assert str(fs.frame.index[0]) == "2011-05" and str(fs.frame.index[-1]) == "2021-10"
        for name in fs.columns:
            col = fs.frame[name]
            assert np.all(np.isfinite(col))
            assert abs(col.mean()) < 1e-10
            assert abs(np.std(col, ddof=1) - 1) < 1e-10
        assert fs.dropped_months == 130 - 126
        assert fs.binding_factor in ("EI", "UI")

    def test_oil_more_volatile_than_production(self, raw):
        fs = fc.build_factor_set(raw)
        assert np.std(fs.raw["OG"], ddof=1) > 3 * np.std(fs.raw["MP"], ddof=1)

    def test_yp(self, raw):
        fs = fc.build_factor_set(raw, yp_enabled=True)
        assert len(fs.columns) == 10 and fs.columns[4] == "YP"
        assert fs.regressors.index("YP") == fs.regressors.index("MP") + 1

    def test_missing_cpi(self, raw):
        series = {r: s for r, s in raw.series.items() if r is not Role.CPI}
        partial = RawDataset(series, raw.returns, raw.start, raw.end)
        with pytest.raises(UnconstructibleFactors) as exc:
            fc.build_factor_set(partial)
        msg = str(exc.value)
        for name in ("EI", "UI", "RHO", "CPI"):
            assert name in msg

    def test_unstandardized(self, raw):
        fs = fc.build_factor_set(raw, standardize=False)
        assert not fs.standardized
        assert fs.frame.equals(fs.raw)

    def test_argmax_invariant(self, raw):
        fs = fc.build_factor_set(raw)
        for name in fs.columns:
            assert np.argmax(fs.frame[name]) == np.argmax(fs.raw[name])
            assert np.argmin(fs.frame[name]) == np.argmin(fs.raw[name])

    @pytest.mark.parametrize("a,b", [("2013-01", "2018-12"), ("2015-06", "2021-10"), ("2011-03", "2016-02")])
    def test_clip_commutes(self, raw, a, b):
        a, b = MonthStamp.parse(a), MonthStamp.parse(b)
        full = fc.build_factor_set(raw, standardize=False).raw
        # one month of padding covers every lag outside the AR filter
        pad = a.shift(-1)
        series = {r: s.clip(pad, b) for r, s in raw.series.items()}
        clipped_raw = RawDataset(series, simple_returns(series[Role.PRICE_INDEX], id="SPYRET"), pad, b)
        part = fc.build_factor_set(clipped_raw, standardize=False).raw
        lookup = {m: i for i, m in enumerate(full.index)}
        rows = [lookup[m] for m in part.index if a <= m <= b]
        assert len(rows) > 12
        keep = [i for i, m in enumerate(part.index) if a <= m <= b]
        # EI/UI come from a whole-window AR fit, so they depend on the window
        for name in ("SPYRET", "TB", "OG", "MP", "RHO", "UPR", "UTS"):
            np.testing.assert_allclose(part[name][keep], full[name][rows], rtol=1e-12, atol=1e-15)
