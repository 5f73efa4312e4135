import datetime as dt
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from econforces.errors import (
    ConfigError,
    DataError,
    DuplicateMonth,
    EmptyAfterClip,
    EmptyFile,
    MalformedRow,
    MissingColumn,
    MissingSource,
    NonPositiveValue,
)
from econforces.ingest import (
    DailySeries,
    Role,
    assemble,
    load_manifest,
    log_returns,
    manifest_from_dict,
    parse_fred_csv,
    parse_price_csv,
    simple_returns,
    to_fred_csv,
    to_monthly,
)
from econforces.series import MonthStamp, Series

from conftest import FIXTURE_DIR


def monthly(values, id="P"):
    m0 = MonthStamp(2011, 1)
    return Series(id, [m0.shift(i) for i in range(len(values))], values)


class TestFredCsv:
    def test_missing_value_skipped(self):
        s = parse_fred_csv("DATE,VALUE\n2011-01-01,100.5\n2011-02-01,.", "X")
        assert s.points == [(MonthStamp(2011, 1), 100.5)]

    def test_observation_date_header(self):
        s = parse_fred_csv(b"observation_date,TB3MS\n2011-01-01,0.0015\n2011-02-01,0.0013\n", "TB3MS")
        assert len(s) == 2

    def test_header_only(self):
        with pytest.raises(EmptyFile):
            parse_fred_csv("DATE,VALUE\n", "X")

    def test_empty(self):
        with pytest.raises(EmptyFile):
            parse_fred_csv("", "X")

    def test_duplicate_month(self):
        with pytest.raises(DuplicateMonth):
            parse_fred_csv("DATE,VALUE\n2011-01-01,1\n2011-01-15,2\n", "X")

    def test_malformed_line_number(self):
        with pytest.raises(MalformedRow) as exc:
            parse_fred_csv("DATE,VALUE\n2011-01-01,1\n2011-02-01,abc\n", "X")
        assert exc.value.line == 3
        with pytest.raises(MalformedRow):
            parse_fred_csv("DATE,VALUE\n2011-01-01,1,2\n", "X")

    def test_deterministic(self):
        data = (FIXTURE_DIR / "CPIAUCSL.csv").read_bytes()
        assert parse_fred_csv(data, "CPI") == parse_fred_csv(data, "CPI")

    @given(st.lists(st.floats(-1e9, 1e9, allow_nan=False), min_size=1, max_size=40))
    def test_round_trip(self, vals):
        s = monthly(vals, "X")
        assert parse_fred_csv(to_fred_csv(s), "X") == s


PRICES = "Date,Open,Adj Close\n2011-01-03,1,100\n2011-01-31,1,101\n2011-02-28,1,103\n"


class TestPriceCsv:
    def test_two_rows(self):
        d = parse_price_csv("Date,Adj Close\n2011-01-03,100\n2011-01-04,101\n", "SPY")
        assert len(d) == 2 and d.values.tolist() == [100.0, 101.0]

    def test_missing_column(self):
        with pytest.raises(MissingColumn, match="Adj Close"):
            parse_price_csv("Date,Close\n2011-01-03,100\n", "SPY")

    def test_custom_columns(self):
        d = parse_price_csv("day,px\n2011-01-03,5\n", "SPY", date_column="day", value_column="px")
        assert d.values.tolist() == [5.0]

    def test_shuffled_rows_sorted(self):
        text = (FIXTURE_DIR / "SPY.csv").read_text()
        head, *rows = text.strip().split("\n")
        random.Random(4).shuffle(rows)
        ordered = parse_price_csv(text, "SPY")
        shuffled = parse_price_csv("\n".join([head] + rows), "SPY")
        assert ordered.reordered == 0 and shuffled.reordered > 0
        assert shuffled.dates == ordered.dates
        assert np.array_equal(shuffled.values, ordered.values)
        assert to_monthly(shuffled) == to_monthly(ordered)

    def test_malformed(self):
        with pytest.raises(MalformedRow):
            parse_price_csv("Date,Adj Close\n2011-01-03,abc\n", "SPY")


class TestToMonthly:
    def daily(self, pairs):
        dates = tuple(dt.date.fromisoformat(d) for d, _ in pairs)
        return DailySeries("x", dates, np.array([v for _, v in pairs], dtype=float))

    def test_last_and_mean(self):
        d = self.daily([("2011-01-05", 10.0), ("2011-01-20", 20.0), ("2011-03-02", 7.0)])
        assert to_monthly(d, "last").points == [(MonthStamp(2011, 1), 20.0), (MonthStamp(2011, 3), 7.0)]
        assert to_monthly(d, "mean").values.tolist() == [15.0, 7.0]

    def test_one_per_month_identity(self):
        d = self.daily([("2011-01-31", 1.0), ("2011-02-28", 2.0)])
        assert to_monthly(d, "last") == to_monthly(d, "mean")

    def test_monthly_series_identity(self):
        s = monthly([1.0, 2.0, 3.0])
        assert to_monthly(s, "last") is s

    def test_bad_rule(self):
        with pytest.raises(ValueError):
            to_monthly(monthly([1.0]), "first")


class TestReturns:
    def test_hand(self):
        assert simple_returns(monthly([100, 110])).values[0] == pytest.approx(0.10, abs=1e-15)
        np.testing.assert_allclose(simple_returns(monthly([100, 110, 99])).values, [0.10, -0.10], atol=1e-15)
        assert simple_returns(monthly([5, 5, 5])).values.tolist() == [0.0, 0.0]

    def test_non_positive(self):
        with pytest.raises(NonPositiveValue):
            simple_returns(monthly([100, 0, 5]))

    def test_log_returns(self):
        assert log_returns(monthly([100, 110])).values[0] == pytest.approx(np.log(1.1))

    def test_gap(self):
        s = Series("P", ["2011-01", "2011-03", "2011-04"], [1.0, 2.0, 4.0])
        assert simple_returns(s).points == [(MonthStamp(2011, 4), 1.0)]


def _manifest(**over):
    d = {
        "start": "2011-01",
        "end": "2021-10",
        "series": [{"role": "CPI", "id": "CPIAUCSL", "path": "CPIAUCSL.csv", "format": "fred_csv"}],
    }
    d.update(over)
    return d


class TestManifest:
    def test_fixture(self):
        m = load_manifest(FIXTURE_DIR / "manifest.toml")
        assert m.missing_roles() == [] and str(m.start) == "2011-01"

    def test_start_after_end(self):
        with pytest.raises(ConfigError):
            manifest_from_dict(_manifest(start="2022-01"), FIXTURE_DIR)

    def test_unknown_keys(self):
        with pytest.raises(ConfigError, match="unknown"):
            manifest_from_dict(_manifest(colour="red"), FIXTURE_DIR)
        bad = _manifest(series=[{"role": "CPI", "id": "x", "path": "p", "format": "fred_csv", "sacle": 1}])
        with pytest.raises(ConfigError, match="sacle"):
            manifest_from_dict(bad, FIXTURE_DIR)

    def test_bad_role_and_format(self):
        with pytest.raises(ConfigError, match="role"):
            manifest_from_dict(_manifest(series=[{"role": "GDP", "id": "x", "path": "p", "format": "fred_csv"}]))
        with pytest.raises(ConfigError, match="format"):
            manifest_from_dict(_manifest(series=[{"role": "CPI", "id": "x", "path": "p", "format": "xlsx"}]))

    def test_duplicate_role(self):
        entry = {"role": "CPI", "id": "x", "path": "p", "format": "fred_csv"}
        with pytest.raises(ConfigError, match="more than once"):
            manifest_from_dict(_manifest(series=[entry, entry]))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_manifest(tmp_path / "nope.toml")


class TestAssemble:
    def test_fixture(self):
        raw = assemble(load_manifest(FIXTURE_DIR / "manifest.toml"))
        assert set(raw.series) == set(Role)
        assert all(str(s.months[0]) >= "2011-01" and str(s.months[-1]) <= "2021-10" for s in raw.series.values())
        assert raw.returns.id == "SPYRET"
        assert {r.role for r in raw.load_report} == {r.value for r in Role}

    def test_wrong_format_names_role(self):
        m = manifest_from_dict(
            _manifest(series=[{"role": "PRICE_INDEX", "id": "SPY", "path": "SPY.csv", "format": "fred_csv"}]),
            FIXTURE_DIR,
        )
        with pytest.raises(DataError, match="PRICE_INDEX"):
            assemble(m)

    def test_missing_source(self):
        m = manifest_from_dict(
            _manifest(series=[{"role": "CPI", "id": "CPI", "path": "gone.csv", "format": "fred_csv"}]),
            FIXTURE_DIR,
        )
        with pytest.raises(MissingSource, match="EI"):
            assemble(m)

    def test_empty_after_clip(self):
        m = manifest_from_dict(_manifest(start="2030-01", end="2030-12"), FIXTURE_DIR)
        with pytest.raises(EmptyAfterClip, match="CPI"):
            assemble(m)

    def test_scale(self):
        base = _manifest(series=[{"role": "CPI", "id": "C", "path": "CPIAUCSL.csv", "format": "fred_csv"}])
        scaled = _manifest(series=[dict(base["series"][0], scale=0.01)])
        a = assemble(manifest_from_dict(base, FIXTURE_DIR))[Role.CPI]
        b = assemble(manifest_from_dict(scaled, FIXTURE_DIR))[Role.CPI]
        np.testing.assert_allclose(b.values, a.values * 0.01)
