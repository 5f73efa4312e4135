"""Economic factor construction.

Each ``build_*`` function maps raw monthly series to one factor. The
:func:`build_factor_set` assembly aligns everything on common months and
standardizes the response together with the regressors, so the regression
that follows needs no intercept.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyIntersection, TooShort, UnconstructibleFactors
from .ingest import RawDataset, Role
from .inflation import InflationDecomposition, decompose_inflation, inflation_series
from .series import Frame, Series, _standardize_values, align, lag, log_diff

RESPONSE = "SPYRET"
REGRESSORS = ("TB", "OG", "MP", "EI", "UI", "RHO", "UPR", "UTS")

# raw input roles each column is built from
FACTOR_INPUTS: dict[str, tuple[Role, ...]] = {
    "SPYRET": (Role.PRICE_INDEX,),
    "TB": (Role.TB,),
    "OG": (Role.PPI_CRUDE,),
    "MP": (Role.IP,),
    "YP": (Role.IP,),
    "EI": (Role.CPI,),
    "UI": (Role.CPI,),
    "RHO": (Role.TB, Role.CPI),
    "UPR": (Role.LOWGRADE_RETURN, Role.LGB_RETURN),
    "UTS": (Role.LGB_RETURN, Role.TB),
}


def build_mp(ip: Series) -> Series:
    """Monthly growth of industrial production, ``ln IP_t - ln IP_{t-1}``."""
    return log_diff(ip, id="MP")


def build_yp(ip: Series) -> Series:
    """Annual growth of industrial production, ``ln IP_t - ln IP_{t-12}``."""
    if len(ip) < 13:
        raise TooShort(f"TooShort: YP needs at least 13 months of {ip.id!r}, got {len(ip)}")
    return log_diff(ip, k=12, id="YP")


def build_og(ppi_crude: Series) -> Series:
    """Log relative of the crude-oil producer price index."""
    return log_diff(ppi_crude, id="OG")


def _difference(a: Series, b: Series, id: str) -> Series:
    """``a_t - b_t`` on the months both series share."""
    common = sorted(set(a.months) & set(b.months))
    if not common:
        raise EmptyIntersection(f"EmptyIntersection: {a.id!r} and {b.id!r} share no month for {id}")
    la, lb = a.as_dict(), b.as_dict()
    return Series(id, common, [la[m] - lb[m] for m in common])


def build_rho(tb: Series, I: Series) -> Series:
    """Ex-post real bill return, ``TB_{t-1} - I_t``."""
    return _difference(lag(tb, 1), I, "RHO")


def build_upr(lowgrade_ret: Series, lgb_ret: Series) -> Series:
    """Low-grade bond minus long-term government bond, ``low_t - LGB_t``."""
    return _difference(lowgrade_ret, lgb_ret, "UPR")


def build_uts(lgb_ret: Series, tb: Series) -> Series:
    """Term structure, ``LGB_t - TB_{t-1}``."""
    return _difference(lgb_ret, lag(tb, 1), "UTS")


@dataclass(frozen=True, eq=False)
class FactorSet:
    """Aligned response and factor columns.

    ``frame`` is what the regression sees (standardized when
    ``standardized`` is true); ``raw`` keeps the same months in natural
    units for descriptive statistics and plots.
    """

    frame: Frame
    raw: Frame
    standardized: bool
    response: str = RESPONSE
    regressors: tuple[str, ...] = REGRESSORS
    inflation: InflationDecomposition | None = None
    dropped_months: int = 0
    binding_factor: str = ""
    spans: dict = field(default_factory=dict)

    @property
    def nobs(self) -> int:
        return self.frame.nrows

    @property
    def columns(self) -> list[str]:
        return self.frame.names

    def design(self):
        from .ols import DesignMatrix

        return DesignMatrix.from_frame(self.frame, self.regressors)

    @property
    def y(self) -> np.ndarray:
        return self.frame[self.response]


def standardize_frame(f: Frame) -> Frame:
    return f.map_columns(lambda name, col: _standardize_values(col, name))


def _check_inputs(raw: RawDataset, columns) -> None:
    missing_roles = [r for r in Role if r not in raw]
    if not missing_roles:
        return
    blocked = [c for c in columns if any(r in missing_roles for r in FACTOR_INPUTS[c])]
    if blocked:
        needed = sorted({r for c in blocked for r in FACTOR_INPUTS[c] if r in missing_roles},
                        key=list(Role).index)
        raise UnconstructibleFactors(blocked, [r.value for r in needed])


def build_factor_set(
    raw: RawDataset,
    *,
    ar_order: int = 2,
    ar_mode: str = "differences",
    yp_enabled: bool = False,
    standardize: bool = True,
) -> FactorSet:
    """Build every factor from ``raw``, align on common months and standardize.

    Columns come out as ``SPYRET, TB, OG, MP, [YP,] EI, UI, RHO, UPR, UTS``.
    Months lost to lags and differencing at the window edges are dropped and
    counted in ``dropped_months``; ``binding_factor`` names the column whose
    first available month set the start of the aligned sample.
    """
    regressors = list(REGRESSORS)
    if yp_enabled:
        regressors.insert(regressors.index("MP") + 1, "YP")
    columns = [RESPONSE] + regressors
    _check_inputs(raw, columns)

    I = inflation_series(raw[Role.CPI])
    decomposition = decompose_inflation(I, mode=ar_mode, order=ar_order)
    built: dict[str, Series] = {
        "SPYRET": raw.returns.rename("SPYRET"),
        "TB": raw[Role.TB].rename("TB"),
        "OG": build_og(raw[Role.PPI_CRUDE]),
        "MP": build_mp(raw[Role.IP]),
        "EI": decomposition.EI,
        "UI": decomposition.UI,
        "RHO": build_rho(raw[Role.TB], I),
        "UPR": build_upr(raw[Role.LOWGRADE_RETURN], raw[Role.LGB_RETURN]),
        "UTS": build_uts(raw[Role.LGB_RETURN], raw[Role.TB]),
    }
    if yp_enabled:
        built["YP"] = build_yp(raw[Role.IP])

    # RHO and UTS use the lag of TB; keep only months inside the window
    ordered = [built[c].clip(raw.start, raw.end).rename(c) for c in columns]
    for s in ordered:
        if len(s) == 0:
            raise EmptyIntersection(f"EmptyIntersection: factor {s.id} is empty inside the window")
    raw_frame = align(ordered)
    spans = {s.id: (str(s.months[0]), str(s.months[-1]), len(s)) for s in ordered}
    binding = max(ordered, key=lambda s: s.months[0]).id
    window_months = raw.end.ordinal - raw.start.ordinal + 1
    frame = standardize_frame(raw_frame) if standardize else raw_frame
    return FactorSet(
        frame=frame,
        raw=raw_frame,
        standardized=standardize,
        regressors=tuple(regressors),
        inflation=decomposition,
        dropped_months=window_months - raw_frame.nrows,
        binding_factor=binding,
        spans=spans,
    )

