"""Realized inflation and its expected/unexpected split by an AR filter.

Expected inflation is the in-sample one-step prediction of an
autoregression fitted once over the whole window; unexpected inflation is
the residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ols
from .errors import TooShort
from .series import Autocorrelation, Series, acf, diff, log_diff

AR_MODES = ("differences", "levels")


@dataclass(frozen=True, eq=False)
class ARFit:
    """Conditional least-squares AR(p) fit with an intercept."""

    order: int
    intercept: float
    coefficients: np.ndarray
    fitted: Series
    residuals: Series
    sigma2: float
    result: ols.RegressionResult | None

    @property
    def nobs(self) -> int:
        return len(self.residuals)


@dataclass(frozen=True, eq=False)
class InflationDecomposition:
    I: Series
    EI: Series
    UI: Series
    mode: str
    ar: ARFit


def inflation_series(cpi: Series) -> Series:
    """Monthly log change of the consumer price index."""
    return log_diff(cpi, id="I").rename("I", "log change")


def _lag_design(x: Series, p: int):
    """Rows t whose p preceding months are all present, with their lag values."""
    pos = {m.ordinal: i for i, m in enumerate(x.months)}
    rows, targets, months = [], [], []
    for j, m in enumerate(x.months):
        idx = [pos.get(m.ordinal - lagk) for lagk in range(1, p + 1)]
        if any(i is None for i in idx):
            continue
        rows.append([x.values[i] for i in idx])
        targets.append(x.values[j])
        months.append(m)
    return np.array(rows).reshape(-1, p), np.array(targets), months


def fit_ar(x: Series, p: int = 2) -> ARFit:
    """Regress ``x_t`` on ``(1, x_{t-1}, ..., x_{t-p})``.

    Only observations whose p lags are all present enter the regression;
    on a gap-free series that is every t from p+1 to n. ``sigma2`` is the
    residual sum of squares over the number of regression rows.
    """
    if int(p) != p or p < 1:
        raise ValueError(f"AR order must be a positive integer, got {p!r}")
    if len(x) < p + 2:
        raise TooShort(f"TooShort: AR({p}) of {x.id!r} needs at least {p + 2} points, got {len(x)}")
    X, y, months = _lag_design(x, p)
    if y.size < p + 2:
        raise TooShort(
            f"TooShort: only {y.size} gap-free rows available for AR({p}) of {x.id!r}"
        )
    names = [f"{x.id}.lag{k}" for k in range(1, p + 1)]
    res = ols.fit(X, y, intercept=True, names=names, dep_name=x.id)
    return ARFit(
        order=p,
        intercept=float(res.coef[0]),
        coefficients=res.coef[1:].copy(),
        fitted=Series(f"{x.id}.fitted", months, res.fitted, x.units),
        residuals=Series(f"{x.id}.resid", months, res.residuals, x.units),
        sigma2=res.ssr / y.size,
        result=res,
    )


def _constant_ar(x: Series, p: int) -> ARFit:
    """Exact AR fit of a series with no variation: intercept only, zero lags."""
    months = list(x.months[p:])
    c = float(np.mean(x.values))
    fitted = np.full(len(months), c)
    resid = x.values[p:] - fitted
    return ARFit(
        order=p,
        intercept=c,
        coefficients=np.zeros(p),
        fitted=Series(f"{x.id}.fitted", months, fitted, x.units),
        residuals=Series(f"{x.id}.resid", months, resid, x.units),
        sigma2=float(resid @ resid) / len(months),
        result=None,
    )


def decompose_inflation(I: Series, mode: str = "differences", order: int = 2) -> InflationDecomposition:
    """Split realized inflation into expected and unexpected parts.

    ``mode="differences"`` fits the AR to ``I_t - I_{t-1}`` and sets
    ``EI_t = I_{t-1} + predicted change``; ``mode="levels"`` fits the AR to
    ``I_t`` itself and takes the fitted values as ``EI``. In both modes
    ``UI = I - EI`` on the output months.
    """
    if mode not in AR_MODES:
        raise ValueError(f"mode must be one of {AR_MODES}, got {mode!r}")
    if len(I) < 5:
        raise TooShort(f"TooShort: inflation decomposition needs at least 5 points, got {len(I)}")
    lookup = I.as_dict()
    if mode == "differences":
        dI = diff(I, id="dI")
        spread = np.ptp(dI.values) if len(dI) else 0.0
        # a constant increment makes the lags collinear with the intercept,
        # but its one-step prediction is exact: the constant itself
        if len(dI) == len(I) - 1 and spread <= 64 * np.finfo(float).eps * np.max(np.abs(dI.values)):
            ar = _constant_ar(dI, order)
        else:
            ar = fit_ar(dI, order)
        months = ar.fitted.months
        prev = np.array([lookup[m.shift(-1)] for m in months])
        expected = prev + ar.fitted.values
    else:
        ar = fit_ar(I, order)
        months = ar.fitted.months
        expected = ar.fitted.values
    realized = np.array([lookup[m] for m in months])
    unexpected = realized - expected
    return InflationDecomposition(
        I=I,
        EI=Series("EI", months, expected, I.units),
        UI=Series("UI", months, unexpected, I.units),
        mode=mode,
        ar=ar,
    )


def acf_diagnosis(I: Series, max_lag: int) -> tuple[Autocorrelation, Autocorrelation]:
    """ACF of inflation in levels and in first differences."""
    return acf(I, max_lag), acf(diff(I, id="dI"), max_lag)
