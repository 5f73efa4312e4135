"""Pipeline configuration file (TOML, flat keys).

Recognized keys, all optional except ``manifest``::

    manifest    = "manifest.toml"   # relative to this file
    start       = "2011-01"         # overrides the manifest window
    end         = "2021-10"
    returns     = "simple"          # or "log"
    ar_order    = 2
    ar_mode     = "differences"     # or "levels"
    yp_enabled  = false
    output_dir  = "out"             # relative to this file
    ci_level    = 0.95
    acf_max_lag = 24
    vintage     = "label printed in the report"
    run_date    = "2021-10-11"      # report date; defaults to today

Unknown keys are rejected.
"""

from __future__ import annotations

import datetime as dt
import sys
from dataclasses import dataclass, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .errors import ConfigError
from .series import MonthStamp

CONFIG_KEYS = (
    "manifest",
    "start",
    "end",
    "returns",
    "ar_order",
    "ar_mode",
    "yp_enabled",
    "output_dir",
    "ci_level",
    "acf_max_lag",
    "vintage",
    "run_date",
)


@dataclass(frozen=True)
class PipelineConfig:
    manifest: Path
    start: MonthStamp | None = None
    end: MonthStamp | None = None
    returns: str = "simple"
    ar_order: int = 2
    ar_mode: str = "differences"
    yp_enabled: bool = False
    output_dir: Path = Path("out")
    ci_level: float = 0.95
    acf_max_lag: int = 24
    vintage: str = ""
    run_date: str | None = None

    def __post_init__(self):
        if self.returns not in ("simple", "log"):
            raise ConfigError(f"ConfigError: returns must be 'simple' or 'log', got {self.returns!r}")
        if self.ar_mode not in ("differences", "levels"):
            raise ConfigError(f"ConfigError: ar_mode must be 'differences' or 'levels', got {self.ar_mode!r}")
        if not isinstance(self.ar_order, int) or isinstance(self.ar_order, bool) or self.ar_order < 1:
            raise ConfigError(f"ConfigError: ar_order must be an integer >= 1, got {self.ar_order!r}")
        if not isinstance(self.acf_max_lag, int) or isinstance(self.acf_max_lag, bool) or self.acf_max_lag < 1:
            raise ConfigError(f"ConfigError: acf_max_lag must be an integer >= 1, got {self.acf_max_lag!r}")
        if not isinstance(self.yp_enabled, bool):
            raise ConfigError(f"ConfigError: yp_enabled must be true or false, got {self.yp_enabled!r}")
        if not isinstance(self.ci_level, (int, float)) or not 0.0 < self.ci_level < 1.0:
            raise ConfigError(f"ConfigError: ci_level must lie strictly between 0 and 1, got {self.ci_level!r}")
        if self.start is not None and self.end is not None and self.end < self.start:
            raise ConfigError(f"ConfigError: start {self.start} is after end {self.end}")
        if self.run_date is not None:
            try:
                dt.date.fromisoformat(self.run_date)
            except (TypeError, ValueError):
                raise ConfigError(f"ConfigError: run_date must be YYYY-MM-DD, got {self.run_date!r}") from None

    def with_output(self, output_dir: Path | str | None) -> "PipelineConfig":
        return self if output_dir is None else replace(self, output_dir=Path(output_dir))

    def report_date(self) -> str:
        return self.run_date or dt.date.today().isoformat()


def _month(value, key: str, where: str) -> MonthStamp:
    try:
        return MonthStamp.parse(str(value))
    except ValueError:
        raise ConfigError(f"ConfigError: {where}: {key} must be YYYY-MM, got {value!r}") from None


def config_from_dict(data: dict, base_dir: Path | str = ".", where: str = "config") -> PipelineConfig:
    base_dir = Path(base_dir)
    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"ConfigError: {where}: unknown key(s) {unknown}")
    if "manifest" not in data:
        raise ConfigError(f"ConfigError: {where}: missing key 'manifest'")
    kw = dict(data)
    for key in ("manifest", "output_dir"):
        if key in kw:
            if not isinstance(kw[key], str):
                raise ConfigError(f"ConfigError: {where}: {key} must be a path string")
            p = Path(kw[key])
            kw[key] = p if p.is_absolute() else base_dir / p
    kw.setdefault("output_dir", base_dir / "out")
    for key in ("start", "end"):
        if key in kw:
            kw[key] = _month(kw[key], key, where)
    if "run_date" in kw and isinstance(kw["run_date"], dt.date):
        kw["run_date"] = kw["run_date"].isoformat()
    if "ci_level" in kw and isinstance(kw["ci_level"], int) and not isinstance(kw["ci_level"], bool):
        kw["ci_level"] = float(kw["ci_level"])
    if "vintage" in kw:
        kw["vintage"] = str(kw["vintage"])
    return PipelineConfig(**kw)


def load_config(path: Path | str) -> PipelineConfig:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"ConfigError: config file not found: {path}") from None
    except IsADirectoryError:
        raise ConfigError(f"ConfigError: config path is a directory: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"ConfigError: cannot parse {path}: {exc}") from None
    return config_from_dict(data, path.parent, str(path))
