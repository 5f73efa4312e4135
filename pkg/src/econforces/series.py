"""Monthly series container, transforms and descriptive statistics.

All objects here are immutable; transforms return new objects. Transforms
never bridge a missing month: a difference or lag-based value is produced
only where the months involved are actually present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    EmptyIntersection,
    NonPositiveValue,
    TooShort,
    ZeroVariance,
)


@total_ordering
@dataclass(frozen=True)
class MonthStamp:
    year: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be in 1..12, got {self.month}")

    def __lt__(self, other: "MonthStamp") -> bool:
        if not isinstance(other, MonthStamp):
            return NotImplemented
        return (self.year, self.month) < (other.year, other.month)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @property
    def ordinal(self) -> int:
        """Months since year 0; consecutive months differ by exactly 1."""
        return self.year * 12 + (self.month - 1)

    @classmethod
    def from_ordinal(cls, n: int) -> "MonthStamp":
        return cls(n // 12, n % 12 + 1)

    @classmethod
    def parse(cls, text: str) -> "MonthStamp":
        """Parse ``YYYY-MM`` or ``YYYY-MM-DD`` (the day is discarded)."""
        parts = str(text).strip().split("-")
        if len(parts) not in (2, 3) or not all(p.isdigit() for p in parts):
            raise ValueError(f"not a YYYY-MM[-DD] date: {text!r}")
        return cls(int(parts[0]), int(parts[1]))

    def shift(self, k: int) -> "MonthStamp":
        return MonthStamp.from_ordinal(self.ordinal + k)

    def successor(self) -> "MonthStamp":
        return self.shift(1)


def _as_month(m) -> MonthStamp:
    if isinstance(m, MonthStamp):
        return m
    if isinstance(m, tuple):
        return MonthStamp(*m)
    return MonthStamp.parse(m)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.flags.writeable = False
    return arr


class Series:
    """Ordered monthly observations with an identifier and units.

    Parameters
    ----------
    id : str
        Series identifier, e.g. ``"INDPRO"`` or ``"MP"``.
    months : sequence of MonthStamp (or ``"YYYY-MM"`` strings)
        Strictly increasing stamps. Missing months are simply absent.
    values : array_like
        Finite values, one per month.
    units : str, optional
    """

    __slots__ = ("id", "units", "months", "values")

    def __init__(self, id: str, months: Iterable, values, units: str = ""):
        months = tuple(_as_month(m) for m in months)
        values = _frozen(values)
        if len(months) != values.shape[0]:
            raise ValueError(
                f"series {id!r}: {len(months)} months but {values.shape[0]} values"
            )
        if not np.all(np.isfinite(values)):
            bad = months[int(np.flatnonzero(~np.isfinite(values))[0])]
            raise ValueError(f"series {id!r}: non-finite value at {bad}")
        for a, b in zip(months, months[1:]):
            if not a < b:
                raise ValueError(
                    f"series {id!r}: months must be strictly increasing ({a} then {b})"
                )
        object.__setattr__(self, "id", str(id))
        object.__setattr__(self, "units", str(units))
        object.__setattr__(self, "months", months)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def from_pairs(cls, id: str, pairs: Iterable, units: str = "") -> "Series":
        pairs = list(pairs)
        return cls(id, [p[0] for p in pairs], [p[1] for p in pairs], units)

    @classmethod
    def from_mapping(cls, id: str, data: Mapping, units: str = "") -> "Series":
        items = sorted((_as_month(k), float(v)) for k, v in data.items())
        return cls.from_pairs(id, items, units)

    def __len__(self) -> int:
        return len(self.months)

    def __iter__(self) -> Iterator[tuple[MonthStamp, float]]:
        return iter(zip(self.months, self.values.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.id == other.id
            and self.units == other.units
            and self.months == other.months
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def __repr__(self) -> str:
        if not self.months:
            return f"Series({self.id!r}, empty)"
        return (
            f"Series({self.id!r}, {len(self)} points, "
            f"{self.months[0]}..{self.months[-1]})"
        )

    @property
    def points(self) -> list[tuple[MonthStamp, float]]:
        return list(self)

    @property
    def ordinals(self) -> np.ndarray:
        return np.array([m.ordinal for m in self.months], dtype=np.int64)

    def as_dict(self) -> dict[MonthStamp, float]:
        return dict(self)

    def get(self, month, default=None):
        return self.as_dict().get(_as_month(month), default)

    def rename(self, id: str, units: str | None = None) -> "Series":
        return Series(id, self.months, self.values, self.units if units is None else units)

    def with_values(self, values, id: str | None = None) -> "Series":
        return Series(self.id if id is None else id, self.months, values, self.units)

    def scale(self, factor: float) -> "Series":
        return self.with_values(self.values * factor)

    def clip(self, start=None, end=None) -> "Series":
        """Restrict to months in the closed interval ``[start, end]``."""
        lo = _as_month(start) if start is not None else None
        hi = _as_month(end) if end is not None else None
        keep = [
            i
            for i, m in enumerate(self.months)
            if (lo is None or not m < lo) and (hi is None or not hi < m)
        ]
        return Series(
            self.id, [self.months[i] for i in keep], self.values[keep], self.units
        )

    def restrict(self, months: Iterable[MonthStamp]) -> "Series":
        wanted = set(months)
        keep = [i for i, m in enumerate(self.months) if m in wanted]
        return Series(
            self.id, [self.months[i] for i in keep], self.values[keep], self.units
        )


def _adjacent(s: Series, k: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i, j) with months[j] exactly ``k`` months after months[i]."""
    pos = {m.ordinal: i for i, m in enumerate(s.months)}
    later, earlier = [], []
    for j, m in enumerate(s.months):
        i = pos.get(m.ordinal - k)
        if i is not None:
            later.append(j)
            earlier.append(i)
    return np.array(later, dtype=np.intp), np.array(earlier, dtype=np.intp)


def _require_positive(s: Series) -> None:
    bad = np.flatnonzero(s.values <= 0)
    if bad.size:
        i = int(bad[0])
        raise NonPositiveValue(s.id, s.months[i], float(s.values[i]))


def log_diff(s: Series, k: int = 1, id: str | None = None) -> Series:
    """``ln(v_t) - ln(v_{t-k})`` for every pair of points exactly k months apart.

    With ``k=1`` this is the monthly log relative (continuously compounded
    growth); ``k=12`` gives annual growth.
    """
    if len(s) < 2:
        raise TooShort(f"TooShort: log_diff of {s.id!r} needs at least 2 points, got {len(s)}")
    _require_positive(s)
    later, earlier = _adjacent(s, k)
    logs = np.log(s.values)
    return Series(
        id or f"dlog({s.id})",
        [s.months[j] for j in later],
        logs[later] - logs[earlier],
        "log change",
    )


def diff(s: Series, id: str | None = None) -> Series:
    """First difference ``v_t - v_{t-1}`` between month-adjacent points."""
    if len(s) < 2:
        raise TooShort(f"TooShort: diff of {s.id!r} needs at least 2 points, got {len(s)}")
    later, earlier = _adjacent(s, 1)
    return Series(
        id or f"d({s.id})",
        [s.months[j] for j in later],
        s.values[later] - s.values[earlier],
        s.units,
    )


def lag(s: Series, k: int = 1) -> Series:
    """Re-stamp every value ``k`` months later, so month t carries ``v_{t-k}``."""
    if int(k) != k or k < 1:
        raise ValueError(f"lag must be a positive integer, got {k!r}")
    k = int(k)
    return Series(f"{s.id}.lag{k}", [m.shift(k) for m in s.months], s.values, s.units)


@dataclass(frozen=True, eq=False)
class Frame:
    """Columns of equal length sharing one month index."""

    index: tuple[MonthStamp, ...]
    columns: Mapping[str, np.ndarray]

    def __post_init__(self):
        index = tuple(_as_month(m) for m in self.index)
        cols = {}
        for name, col in dict(self.columns).items():
            arr = _frozen(col)
            if arr.shape[0] != len(index):
                raise ValueError(
                    f"column {name!r} has {arr.shape[0]} values for {len(index)} index entries"
                )
            cols[str(name)] = arr
        if len(cols) != len(dict(self.columns)):
            raise ValueError("column names must be unique")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "columns", cols)

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    @property
    def nrows(self) -> int:
        return len(self.index)

    def __len__(self) -> int:
        return len(self.index)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    def __contains__(self, name) -> bool:
        return name in self.columns

    def series(self, name: str) -> Series:
        return Series(name, self.index, self.columns[name])

    def matrix(self, names: Sequence[str] | None = None) -> np.ndarray:
        names = self.names if names is None else list(names)
        return np.column_stack([self.columns[n] for n in names]) if names else np.empty((self.nrows, 0))

    def select(self, names: Sequence[str]) -> "Frame":
        return Frame(self.index, {n: self.columns[n] for n in names})

    def map_columns(self, fn) -> "Frame":
        return Frame(self.index, {n: fn(n, c) for n, c in self.columns.items()})

    def equals(self, other: "Frame") -> bool:
        return (
            self.index == other.index
            and self.names == other.names
            and all(np.array_equal(self[n], other[n]) for n in self.names)
        )


def align(series: Sequence[Series]) -> Frame:
    """Intersect the month sets of ``series`` and build a :class:`Frame`."""
    series = list(series)
    if not series:
        raise ValueError("align needs at least one series")
    ids = [s.id for s in series]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate series ids: {ids}")
    common = set(series[0].months)
    for s in series[1:]:
        common &= set(s.months)
    if not common:
        raise EmptyIntersection(
            "EmptyIntersection: no month is common to " + ", ".join(ids)
        )
    index = tuple(sorted(common))
    cols = {}
    for s in series:
        lookup = s.as_dict()
        cols[s.id] = [lookup[m] for m in index]
    return Frame(index, cols)


def _std(x: np.ndarray) -> float:
    return float(np.std(x, ddof=1)) if x.size > 1 else 0.0


def standardize(s: Series) -> Series:
    """``(x - mean) / std`` with the sample (n-1) standard deviation."""
    if len(s) < 2:
        raise TooShort(f"TooShort: standardize of {s.id!r} needs at least 2 points")
    return s.with_values(_standardize_values(s.values, s.id))


def _standardize_values(x: np.ndarray, name: str) -> np.ndarray:
    mean = x.mean()
    centred = x - mean
    sd = math.sqrt(float(centred @ centred) / (x.size - 1))
    if sd == 0.0 or sd <= 1e-14 * max(abs(mean), 1e-300):
        raise ZeroVariance(f"ZeroVariance: column {name!r} is constant")
    z = centred / sd
    # one corrective pass removes the residual rounding in mean and scale
    z = z - z.mean()
    return z / math.sqrt(float(z @ z) / (x.size - 1))


@dataclass(frozen=True)
class SummaryStats:
    count: int
    mean: float
    std: float
    min: float
    q25: float
    q50: float
    q75: float
    max: float

    ROWS = ("count", "mean", "std", "min", "25%", "50%", "75%", "max")

    def as_row(self) -> list[float]:
        return [self.count, self.mean, self.std, self.min, self.q25, self.q50, self.q75, self.max]


def _quantile(sorted_x: np.ndarray, p: float) -> float:
    pos = (sorted_x.size - 1) * p
    lo = math.floor(pos)
    hi = min(lo + 1, sorted_x.size - 1)
    frac = pos - lo
    return float(sorted_x[lo] + (sorted_x[hi] - sorted_x[lo]) * frac)


def describe(f: Frame) -> dict[str, SummaryStats]:
    """Count, mean, sample std, min, quartiles and max of every column.

    Quartiles interpolate linearly between order statistics at position
    ``(n - 1) * p``.
    """
    out = {}
    for name, x in f.columns.items():
        if x.size == 0:
            raise TooShort(f"TooShort: column {name!r} is empty")
        xs = np.sort(x)
        out[name] = SummaryStats(
            count=int(x.size),
            mean=float(x.mean()),
            std=_std(x),
            min=float(xs[0]),
            q25=_quantile(xs, 0.25),
            q50=_quantile(xs, 0.50),
            q75=_quantile(xs, 0.75),
            max=float(xs[-1]),
        )
    return out


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def __getitem__(self, key: tuple[str, str]) -> float:
        a, b = key
        return float(self.values[self.labels.index(a), self.labels.index(b)])


def correlation_matrix(f: Frame) -> CorrelationMatrix:
    """Pearson correlations between all columns of ``f``."""
    if len(f.names) < 2:
        raise ValueError("correlation_matrix needs at least 2 columns")
    if f.nrows < 2:
        raise TooShort("TooShort: correlation needs at least 2 rows")
    X = f.matrix()
    centred = X - X.mean(axis=0)
    norms = np.sqrt(np.einsum("ij,ij->j", centred, centred))
    for name, nrm in zip(f.names, norms):
        if nrm == 0.0:
            raise ZeroVariance(f"ZeroVariance: column {name!r} is constant")
    corr = (centred.T @ centred) / np.outer(norms, norms)
    corr = np.clip((corr + corr.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(corr, 1.0)
    corr.flags.writeable = False
    return CorrelationMatrix(tuple(f.names), corr)


@dataclass(frozen=True, eq=False)
class Autocorrelation:
    """Sample autocorrelations ``r_1..r_max_lag`` and the 95% white-noise band."""

    r: np.ndarray
    band: float
    nobs: int

    @property
    def lags(self) -> np.ndarray:
        return np.arange(1, self.r.size + 1)

    def with_lag0(self) -> np.ndarray:
        return np.concatenate([[1.0], self.r])


def acf(s: Series | np.ndarray, max_lag: int) -> Autocorrelation:
    """Mean-subtracted sample ACF with the biased (divide by n) covariance.

    Points are taken in storage order; callers wanting gap-free lags should
    pass a series without missing months.
    """
    x = np.asarray(s.values if isinstance(s, Series) else s, dtype=np.float64)
    name = s.id if isinstance(s, Series) else "series"
    n = x.size
    if max_lag < 1:
        raise ValueError(f"max_lag must be >= 1, got {max_lag}")
    if n <= max_lag:
        raise TooShort(f"TooShort: acf of {name!r} with {n} points cannot reach lag {max_lag}")
    d = x - x.mean()
    denom = float(d @ d)
    if denom == 0.0:
        raise ZeroVariance(f"ZeroVariance: {name!r} is constant, autocorrelation undefined")
    r = np.array([float(d[k:] @ d[:-k]) / denom for k in range(1, max_lag + 1)])
    r.flags.writeable = False
    return Autocorrelation(r=r, band=1.96 / math.sqrt(n), nobs=n)
