"""Residual diagnostics for a fitted regression.

Skewness and kurtosis use population (divide-by-n) central moments and the
kurtosis is raw, so a normal sample gives roughly 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .distributions import chi2_survival, normal_quantile
from .errors import AllZero, TooShort, ZeroVariance

DW_LABELS = {
    "positive_autocorr": "Positive autocorrelation",
    "none": "Little to no autocorrelation",
    "negative_autocorr": "Negative autocorrelation",
}
DW_LOWER = 1.5
DW_UPPER = 2.5


def durbin_watson(e) -> tuple[float, str]:
    """Durbin-Watson statistic and its rule-of-thumb label.

    Values strictly below 1.5 are labelled ``positive_autocorr``, strictly
    above 2.5 ``negative_autocorr``, anything in the closed band ``none``.
    """
    e = np.asarray(e, dtype=np.float64).reshape(-1)
    if e.size < 2:
        raise TooShort(f"TooShort: Durbin-Watson needs at least 2 residuals, got {e.size}")
    denom = float(e @ e)
    if denom == 0.0:
        raise AllZero("AllZero: Durbin-Watson is undefined for all-zero residuals")
    de = np.diff(e)
    d = float(de @ de) / denom
    return d, dw_label(d)


def dw_label(d: float) -> str:
    if d < DW_LOWER:
        return "positive_autocorr"
    if d > DW_UPPER:
        return "negative_autocorr"
    return "none"


def moments(e) -> tuple[float, float]:
    """Sample skewness and raw kurtosis from population central moments."""
    e = np.asarray(e, dtype=np.float64).reshape(-1)
    if e.size < 3:
        raise TooShort(f"TooShort: moments need at least 3 values, got {e.size}")
    d = e - e.mean()
    m2 = float(np.mean(d * d))
    if m2 == 0.0 or m2 <= (1e-15 * max(abs(e.mean()), 1e-300)) ** 2:
        raise ZeroVariance("ZeroVariance: residuals are constant")
    m3 = float(np.mean(d ** 3))
    m4 = float(np.mean(d ** 4))
    return m3 / m2 ** 1.5, m4 / m2 ** 2


def jarque_bera_from_moments(skew: float, kurtosis: float, n: int) -> tuple[float, float]:
    jb = n / 6.0 * (skew ** 2 + (kurtosis - 3.0) ** 2 / 4.0)
    return jb, chi2_survival(jb, 2)


def jarque_bera(e) -> tuple[float, float]:
    """Jarque-Bera statistic with its chi-square(2) p-value."""
    e = np.asarray(e, dtype=np.float64).reshape(-1)
    s, k = moments(e)
    return jarque_bera_from_moments(s, k, e.size)


def skew_z(skew: float, n: int) -> float:
    """D'Agostino's normalizing transform of sample skewness."""
    y = skew * math.sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)))
    beta2 = (
        3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0)
        / ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0))
    )
    w2 = -1.0 + math.sqrt(2.0 * (beta2 - 1.0))
    delta = 1.0 / math.sqrt(0.5 * math.log(w2))
    alpha = math.sqrt(2.0 / (w2 - 1.0))
    ya = y / alpha
    return delta * math.log(ya + math.sqrt(ya * ya + 1.0))


def kurtosis_z(kurtosis: float, n: int) -> float:
    """Anscombe-Glynn normalizing transform of raw sample kurtosis."""
    mean_b2 = 3.0 * (n - 1.0) / (n + 1.0)
    var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) ** 2 * (n + 3.0) * (n + 5.0))
    x = (kurtosis - mean_b2) / math.sqrt(var_b2)
    # third standardized moment of b2
    sqrt_beta1 = (
        6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0))
        * math.sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)))
    )
    a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + math.sqrt(1.0 + 4.0 / sqrt_beta1 ** 2))
    term1 = 1.0 - 2.0 / (9.0 * a)
    denom = 1.0 + x * math.sqrt(2.0 / (a - 4.0))
    if denom == 0.0:
        return math.inf
    term2 = math.copysign(abs((1.0 - 2.0 / a) / denom) ** (1.0 / 3.0), denom)
    return (term1 - term2) / math.sqrt(2.0 / (9.0 * a))


def omnibus_from_moments(skew: float, kurtosis: float, n: int) -> tuple[float, float]:
    if n < 20:
        raise TooShort(f"TooShort: omnibus normality test needs n >= 20, got {n}")
    k2 = skew_z(skew, n) ** 2 + kurtosis_z(kurtosis, n) ** 2
    return k2, chi2_survival(k2, 2)


def omnibus_k2(e) -> tuple[float, float]:
    """D'Agostino-Pearson K-squared normality statistic and p-value.

    The skewness and kurtosis transforms are only accurate from about 20
    observations, so shorter inputs are rejected.
    """
    e = np.asarray(e, dtype=np.float64).reshape(-1)
    if e.size < 20:
        raise TooShort(f"TooShort: omnibus normality test needs n >= 20, got {e.size}")
    s, k = moments(e)
    return omnibus_from_moments(s, k, e.size)


def qq_points(e) -> np.ndarray:
    """Normal Q-Q pairs: column 0 theoretical quantiles, column 1 sorted z-scores.

    Plotting positions are ``(i - 0.5) / n``.
    """
    e = np.asarray(e, dtype=np.float64).reshape(-1)
    n = e.size
    if n < 3:
        raise TooShort(f"TooShort: Q-Q plot needs at least 3 residuals, got {n}")
    d = e - e.mean()
    sd = math.sqrt(float(d @ d) / n)
    if sd == 0.0:
        raise ZeroVariance("ZeroVariance: residuals are constant")
    z = np.sort(d / sd)
    theo = np.array([normal_quantile((i - 0.5) / n) for i in range(1, n + 1)])
    if n % 2:
        theo[n // 2] = 0.0
    return np.column_stack([theo, z])


def resid_fitted_pairs(result) -> np.ndarray:
    """``(fitted_t, residual_t)`` rows in time order."""
    return np.column_stack([np.asarray(result.fitted), np.asarray(result.residuals)])


@dataclass(frozen=True, eq=False)
class DiagnosticsReport:
    dw: float
    dw_label: str
    jb: float
    jb_p: float
    omnibus: float
    omnibus_p: float
    skew: float
    kurtosis: float
    qq: np.ndarray
    resid_fitted: np.ndarray
    resid_mean: float

    @property
    def dw_text(self) -> str:
        return DW_LABELS[self.dw_label]

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = v.tolist() if isinstance(v, np.ndarray) else v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "DiagnosticsReport":
        kwargs = {}
        for f in fields(cls):
            v = data[f.name]
            if f.name in ("qq", "resid_fitted"):
                v = np.array(v, dtype=np.float64).reshape(-1, 2)
            kwargs[f.name] = v
        return cls(**kwargs)


def diagnose(result) -> DiagnosticsReport:
    """Run every residual diagnostic on a fitted :class:`RegressionResult`."""
    e = np.asarray(result.residuals)
    dw, label = durbin_watson(e)
    skew, kurt = moments(e)
    jb, jb_p = jarque_bera_from_moments(skew, kurt, e.size)
    k2, k2_p = omnibus_from_moments(skew, kurt, e.size)
    return DiagnosticsReport(
        dw=dw,
        dw_label=label,
        jb=jb,
        jb_p=jb_p,
        omnibus=k2,
        omnibus_p=k2_p,
        skew=skew,
        kurtosis=kurt,
        qq=qq_points(e),
        resid_fitted=resid_fitted_pairs(result),
        resid_mean=float(e.mean()),
    )
