"""Local CSV ingestion: FRED-style exports, price histories and the manifest.

Nothing here touches the network. A manifest names one file per input role
and the month window to keep; :func:`assemble` turns it into a
:class:`RawDataset`.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import logging
import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .errors import (
    ConfigError,
    DataError,
    DuplicateMonth,
    EmptyAfterClip,
    EmptyFile,
    MalformedRow,
    MissingColumn,
    MissingSource,
    NonPositiveValue,
    TooShort,
)
from .series import MonthStamp, Series, log_diff

log = logging.getLogger(__name__)


class Role(str, Enum):
    IP = "IP"
    CPI = "CPI"
    TB = "TB"
    PPI_CRUDE = "PPI_CRUDE"
    LGB_RETURN = "LGB_RETURN"
    LOWGRADE_RETURN = "LOWGRADE_RETURN"
    PRICE_INDEX = "PRICE_INDEX"


class Format(str, Enum):
    FRED_CSV = "fred_csv"
    PRICE_CSV = "price_csv"


# factors that cannot be built without each input role
ROLE_FACTORS: dict[Role, tuple[str, ...]] = {
    Role.IP: ("MP", "YP"),
    Role.CPI: ("EI", "UI", "RHO"),
    Role.TB: ("TB", "RHO", "UTS"),
    Role.PPI_CRUDE: ("OG",),
    Role.LGB_RETURN: ("UPR", "UTS"),
    Role.LOWGRADE_RETURN: ("UPR",),
    Role.PRICE_INDEX: ("SPYRET",),
}

MANIFEST_KEYS = {"start", "end", "series"}
ENTRY_KEYS = {"role", "id", "path", "format", "scale", "date_column", "value_column", "resample"}


def _text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        return bytes(data).decode("utf-8-sig")
    if hasattr(data, "read"):
        return _text(data.read())
    return str(data).lstrip("﻿")


def _parse_date(text: str) -> dt.date:
    return dt.date.fromisoformat(text.strip())


def parse_fred_csv(data, id: str, units: str = "", source: str = "") -> Series:
    """Parse a two-column ``date,value`` export into a monthly :class:`Series`.

    Rows whose value is ``.`` are missing observations and are skipped. The
    day of month is discarded; two rows in the same month are an error.
    """
    rows = list(csv.reader(io.StringIO(_text(data))))
    rows = [r for r in rows if any(c.strip() for c in r)]
    if not rows:
        raise EmptyFile(f"EmptyFile: {source or id} has no header")
    if len(rows[0]) != 2:
        raise MalformedRow(1, f"expected a two-column header, got {rows[0]}", source)
    if len(rows) == 1:
        raise EmptyFile(f"EmptyFile: {source or id} has a header but no observations")
    points: dict[MonthStamp, float] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise MalformedRow(lineno, f"expected 2 fields, got {len(row)}", source)
        raw_date, raw_value = row[0].strip(), row[1].strip()
        try:
            d = _parse_date(raw_date)
        except ValueError:
            raise MalformedRow(lineno, f"bad date {raw_date!r}", source) from None
        month = MonthStamp(d.year, d.month)
        if raw_value == ".":
            continue
        try:
            value = float(raw_value)
        except ValueError:
            raise MalformedRow(lineno, f"bad value {raw_value!r}", source) from None
        if not np.isfinite(value):
            raise MalformedRow(lineno, f"non-finite value {raw_value!r}", source)
        if month in points:
            raise DuplicateMonth(f"DuplicateMonth: {source or id} has two rows for {month} (line {lineno})")
        points[month] = value
    if not points:
        raise EmptyFile(f"EmptyFile: {source or id} has no non-missing observations")
    return Series.from_mapping(id, points, units)


def to_fred_csv(s: Series) -> str:
    """Serialize a monthly series in the layout :func:`parse_fred_csv` reads."""
    lines = ["DATE,VALUE"]
    lines += [f"{m}-01,{v!r}" for m, v in s]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class DailySeries:
    """Observations stamped by calendar date, before monthly resampling."""

    id: str
    dates: tuple[dt.date, ...]
    values: np.ndarray
    reordered: int = 0

    def __len__(self) -> int:
        return len(self.dates)


def parse_price_csv(
    data,
    id: str,
    date_column: str = "Date",
    value_column: str = "Adj Close",
    source: str = "",
) -> DailySeries:
    """Read dates and adjusted closes from a price history export.

    Rows out of date order are accepted and sorted; ``reordered`` on the
    result counts how many rows were out of place. Rows with a missing or
    ``null`` close are skipped.
    """
    reader = csv.DictReader(io.StringIO(_text(data)))
    header = [h.strip() for h in (reader.fieldnames or [])]
    if not header:
        raise EmptyFile(f"EmptyFile: {source or id} has no header")
    reader.fieldnames = header
    for col in (date_column, value_column):
        if col not in header:
            raise MissingColumn(col, source or id)
    obs: dict[dt.date, float] = {}
    order: list[dt.date] = []
    for lineno, row in enumerate(reader, start=2):
        raw_date = (row.get(date_column) or "").strip()
        raw_value = (row.get(value_column) or "").strip()
        if not raw_date and not raw_value:
            continue
        try:
            d = _parse_date(raw_date[:10])
        except ValueError:
            raise MalformedRow(lineno, f"bad date {raw_date!r}", source) from None
        if raw_value in ("", ".", "null", "NaN", "nan"):
            continue
        try:
            value = float(raw_value)
        except ValueError:
            raise MalformedRow(lineno, f"bad value {raw_value!r}", source) from None
        if d in obs:
            raise MalformedRow(lineno, f"duplicate date {d.isoformat()}", source)
        obs[d] = value
        order.append(d)
    if not obs:
        raise EmptyFile(f"EmptyFile: {source or id} has no observations")
    dates = sorted(obs)
    reordered = sum(1 for a, b in zip(order, dates) if a != b)
    if reordered:
        log.warning("%s: %d rows out of date order, sorted", source or id, reordered)
    return DailySeries(id, tuple(dates), np.array([obs[d] for d in dates]), reordered)


def to_monthly(s: DailySeries | Series, rule: str = "last") -> Series:
    """Collapse date-stamped observations to one value per month.

    ``rule="last"`` keeps each month's final observation, ``rule="mean"``
    averages within the month. Months without observations are absent.
    """
    if rule not in ("last", "mean"):
        raise ValueError(f"resample rule must be 'last' or 'mean', got {rule!r}")
    if isinstance(s, Series):
        return s
    if len(s) == 0:
        raise TooShort(f"TooShort: {s.id!r} has no observations to resample")
    buckets: dict[MonthStamp, list[float]] = {}
    for d, v in zip(s.dates, s.values.tolist()):
        buckets.setdefault(MonthStamp(d.year, d.month), []).append(v)
    months = sorted(buckets)
    if rule == "last":
        vals = [buckets[m][-1] for m in months]
    else:
        vals = [float(np.mean(buckets[m])) for m in months]
    return Series(s.id, months, vals)


def simple_returns(prices: Series, id: str | None = None) -> Series:
    """``P_t / P_{t-1} - 1`` between month-adjacent prices."""
    if len(prices) < 2:
        raise TooShort(f"TooShort: returns of {prices.id!r} need at least 2 prices")
    bad = np.flatnonzero(prices.values <= 0)
    if bad.size:
        i = int(bad[0])
        raise NonPositiveValue(prices.id, prices.months[i], float(prices.values[i]))
    pos = {m.ordinal: i for i, m in enumerate(prices.months)}
    months, vals = [], []
    for j, m in enumerate(prices.months):
        i = pos.get(m.ordinal - 1)
        if i is not None:
            months.append(m)
            vals.append(prices.values[j] / prices.values[i] - 1.0)
    return Series(id or f"ret({prices.id})", months, vals, "return")


def log_returns(prices: Series, id: str | None = None) -> Series:
    return log_diff(prices, id=id or f"logret({prices.id})")


@dataclass(frozen=True)
class ManifestEntry:
    role: Role
    series_id: str
    path: Path
    format: Format
    scale: float = 1.0
    date_column: str = "Date"
    value_column: str = "Adj Close"
    resample: str = "last"


@dataclass(frozen=True)
class DataManifest:
    entries: tuple[ManifestEntry, ...]
    start: MonthStamp
    end: MonthStamp

    def __post_init__(self):
        if self.end < self.start:
            raise ConfigError(f"ConfigError: manifest window start {self.start} is after end {self.end}")
        seen = set()
        for e in self.entries:
            if e.role in seen:
                raise ConfigError(f"ConfigError: role {e.role.value} listed more than once")
            seen.add(e.role)

    @property
    def roles(self) -> set[Role]:
        return {e.role for e in self.entries}

    def entry(self, role: Role) -> ManifestEntry:
        for e in self.entries:
            if e.role == role:
                return e
        raise KeyError(role)

    def missing_roles(self) -> list[Role]:
        return [r for r in Role if r not in self.roles]


def _month_key(value, key: str, where: str) -> MonthStamp:
    try:
        return MonthStamp.parse(str(value))
    except ValueError:
        raise ConfigError(f"ConfigError: {where}: {key} must be YYYY-MM, got {value!r}") from None


def manifest_from_dict(data: Mapping, base_dir: Path | str = ".", where: str = "manifest") -> DataManifest:
    """Validate a parsed manifest table; relative paths resolve against ``base_dir``."""
    base_dir = Path(base_dir)
    unknown = set(data) - MANIFEST_KEYS
    if unknown:
        raise ConfigError(f"ConfigError: {where}: unknown key(s) {sorted(unknown)}")
    for key in ("start", "end", "series"):
        if key not in data:
            raise ConfigError(f"ConfigError: {where}: missing key {key!r}")
    entries = []
    for i, raw in enumerate(data["series"]):
        loc = f"{where}: series[{i}]"
        if not isinstance(raw, Mapping):
            raise ConfigError(f"ConfigError: {loc} must be a table")
        unknown = set(raw) - ENTRY_KEYS
        if unknown:
            raise ConfigError(f"ConfigError: {loc}: unknown key(s) {sorted(unknown)}")
        for key in ("role", "id", "path", "format"):
            if key not in raw:
                raise ConfigError(f"ConfigError: {loc}: missing key {key!r}")
        try:
            role = Role(raw["role"])
        except ValueError:
            raise ConfigError(
                f"ConfigError: {loc}: unknown role {raw['role']!r}; expected one of {[r.value for r in Role]}"
            ) from None
        try:
            fmt = Format(raw["format"])
        except ValueError:
            raise ConfigError(f"ConfigError: {loc}: unknown format {raw['format']!r}") from None
        resample = raw.get("resample", "last")
        if resample not in ("last", "mean"):
            raise ConfigError(f"ConfigError: {loc}: resample must be 'last' or 'mean'")
        scale = raw.get("scale", 1.0)
        if not isinstance(scale, (int, float)) or isinstance(scale, bool) or scale <= 0:
            raise ConfigError(f"ConfigError: {loc}: scale must be a positive number")
        path = Path(raw["path"])
        entries.append(
            ManifestEntry(
                role=role,
                series_id=str(raw["id"]),
                path=path if path.is_absolute() else base_dir / path,
                format=fmt,
                scale=float(scale),
                date_column=str(raw.get("date_column", "Date")),
                value_column=str(raw.get("value_column", "Adj Close")),
                resample=resample,
            )
        )
    return DataManifest(
        tuple(entries),
        _month_key(data["start"], "start", where),
        _month_key(data["end"], "end", where),
    )


def load_manifest(path: Path | str) -> DataManifest:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"ConfigError: manifest file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"ConfigError: cannot parse manifest {path}: {exc}") from None
    return manifest_from_dict(data, path.parent, str(path))


@dataclass(frozen=True)
class LoadRecord:
    role: str
    series_id: str
    path: str
    parsed: int
    monthly: int
    kept: int
    first: str
    last: str


@dataclass(frozen=True, eq=False)
class RawDataset:
    """One monthly series per available role, clipped to the manifest window.

    ``series`` holds levels (prices for ``PRICE_INDEX``); ``returns`` holds the
    price index returns.
    """

    series: Mapping[Role, Series]
    returns: Series | None
    start: MonthStamp
    end: MonthStamp
    load_report: tuple[LoadRecord, ...] = field(default=())

    def __getitem__(self, role: Role | str) -> Series:
        return self.series[Role(role)]

    def __contains__(self, role) -> bool:
        return Role(role) in self.series

    @property
    def missing_roles(self) -> list[Role]:
        return [r for r in Role if r not in self.series]


def _tag_role(exc: DataError, entry: ManifestEntry) -> DataError:
    needed = ", ".join(ROLE_FACTORS[entry.role])
    exc.args = (f"[role {entry.role.value}, needed for {needed}] {exc}",)
    return exc


def load_entry(entry: ManifestEntry) -> tuple[Series, int]:
    """Parse one manifest entry into a monthly series (before clipping)."""
    try:
        data = Path(entry.path).read_bytes()
    except OSError as exc:
        raise MissingSource(
            f"MissingSource: role {entry.role.value} (needed for "
            f"{', '.join(ROLE_FACTORS[entry.role])}): cannot read {entry.path}: "
            f"{exc.strerror or exc}"
        ) from None
    try:
        if entry.format is Format.FRED_CSV:
            s = parse_fred_csv(data, entry.series_id, source=str(entry.path))
            parsed = len(s)
            if entry.resample != "last":
                log.debug("resample rule ignored for monthly file %s", entry.path)
        else:
            daily = parse_price_csv(
                data,
                entry.series_id,
                entry.date_column,
                entry.value_column,
                source=str(entry.path),
            )
            parsed = len(daily)
            s = to_monthly(daily, entry.resample)
    except DataError as exc:
        raise _tag_role(exc, entry)
    if entry.scale != 1.0:
        s = s.scale(entry.scale)
    return s, parsed


def assemble(manifest: DataManifest, returns: str = "simple") -> RawDataset:
    """Load every manifest entry, resample to months and clip to the window.

    Roles absent from the manifest are simply absent from the dataset; the
    factor builder reports which factors that makes impossible.
    """
    if returns not in ("simple", "log"):
        raise ConfigError(f"ConfigError: returns must be 'simple' or 'log', got {returns!r}")
    series: dict[Role, Series] = {}
    report = []
    for entry in sorted(manifest.entries, key=lambda e: list(Role).index(e.role)):
        s, parsed = load_entry(entry)
        clipped = s.clip(manifest.start, manifest.end)
        if len(clipped) == 0:
            raise EmptyAfterClip(
                f"EmptyAfterClip: role {entry.role.value} ({entry.path}) has no data in "
                f"{manifest.start}..{manifest.end}"
            )
        series[entry.role] = clipped
        report.append(
            LoadRecord(
                entry.role.value,
                entry.series_id,
                str(entry.path),
                parsed,
                len(s),
                len(clipped),
                str(clipped.months[0]),
                str(clipped.months[-1]),
            )
        )
    rets = None
    if Role.PRICE_INDEX in series:
        prices = series[Role.PRICE_INDEX]
        try:
            rets = (simple_returns if returns == "simple" else log_returns)(prices, id="SPYRET")
        except DataError as exc:
            raise DataError(f"[role PRICE_INDEX, needed for SPYRET] {exc}") from None
    return RawDataset(series, rets, manifest.start, manifest.end, tuple(report))
