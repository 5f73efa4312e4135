"""Ordinary least squares with the full regression summary.

The solve uses a Householder QR factorization with column pivoting; the
coefficient covariance comes from the triangular factor as
``R^-1 R^-T``, never from inverting ``X'X``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from . import distributions as dist
from .errors import DegenerateResponse, RankDeficient, TooFewRows, TooShort, ZeroVariance


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    names: tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.float64)
        if rows.ndim == 1:
            rows = rows[:, None]
        names = tuple(self.names)
        if rows.ndim != 2 or rows.shape[1] != len(names):
            raise ValueError(f"{len(names)} names for a design of shape {rows.shape}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate regressor names: {names}")
        if not np.all(np.isfinite(rows)):
            raise ValueError("design matrix contains non-finite entries")
        rows.flags.writeable = False
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def k(self) -> int:
        return self.rows.shape[1]

    @classmethod
    def from_frame(cls, frame, names: Sequence[str]) -> "DesignMatrix":
        return cls(tuple(names), frame.matrix(names))


@dataclass(frozen=True, eq=False)
class RegressionResult:
    names: tuple[str, ...]
    coef: np.ndarray
    stderr: np.ndarray
    tstat: np.ndarray
    pvalue: np.ndarray
    ci_low: np.ndarray
    ci_high: np.ndarray
    r2: float
    adj_r2: float
    fstat: float
    f_pvalue: float
    loglik: float
    aic: float
    bic: float
    nobs: int
    df_resid: int
    df_model: int
    ssr: float
    residuals: np.ndarray
    fitted: np.ndarray
    cond_no: float
    resid_skew: float
    resid_kurtosis: float
    intercept: bool = False
    ci_level: float = 0.95
    perfect_fit: bool = False
    dep_name: str = "y"

    @property
    def r2_uncentered(self) -> float:
        """R-squared; the uncentered definition when no intercept is fit."""
        return self.r2

    @property
    def sigma2(self) -> float:
        return self.ssr / self.df_resid

    def params(self) -> dict[str, float]:
        return dict(zip(self.names, self.coef.tolist()))

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, np.ndarray):
                v = v.tolist()
            elif isinstance(v, tuple):
                v = list(v)
            out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RegressionResult":
        kwargs = {}
        for f in fields(cls):
            v = data[f.name]
            if f.name == "names":
                v = tuple(v)
            elif isinstance(v, list):
                v = np.array(v, dtype=np.float64)
            kwargs[f.name] = v
        return cls(**kwargs)


class SummaryStatistics(NamedTuple):
    r2: float
    adj_r2: float
    fstat: float
    f_pvalue: float
    loglik: float
    aic: float
    bic: float
    perfect_fit: bool = False


class TInference(NamedTuple):
    tstat: np.ndarray
    pvalue: np.ndarray
    ci_low: np.ndarray
    ci_high: np.ndarray


def gaussian_loglik(ssr: float, n: int) -> float:
    if ssr <= 0.0:
        return math.inf
    return -n / 2.0 * (1.0 + math.log(2.0 * math.pi) + math.log(ssr / n))


def information_criteria(loglik: float, k: int, n: int) -> tuple[float, float]:
    """AIC and BIC for ``k`` estimated coefficients."""
    return -2.0 * loglik + 2.0 * k, -2.0 * loglik + k * math.log(n)


def adjusted_r2(r2: float, n: int, k: int, intercept: bool = False) -> float:
    """Adjusted R-squared, ``1 - (1 - R2) * (n - c) / (n - k)`` with c = 1 iff centred."""
    return 1.0 - (1.0 - r2) * (n - int(intercept)) / (n - k)


def f_statistic(r2: float, n: int, k: int, intercept: bool = False) -> tuple[float, float]:
    """Overall F test of all slopes, returned with its upper-tail p-value."""
    df_model = k - int(intercept)
    df_resid = n - k
    if df_model < 1:
        return math.nan, math.nan
    if 1.0 - r2 <= 0.0:
        return math.inf, 0.0
    f = (r2 / df_model) / ((1.0 - r2) / df_resid)
    return f, dist.f_survival(max(f, 0.0), df_model, df_resid)


def summary_stats(ssr: float, y, n: int, k: int, intercept: bool = False) -> SummaryStatistics:
    """Fit measures from the residual sum of squares.

    Without an intercept R-squared is uncentered, ``1 - SSR / sum(y^2)``;
    with one it is centred on the mean of ``y``. A perfect fit reports
    ``F = inf`` and sets ``perfect_fit``.
    """
    y = np.asarray(y, dtype=np.float64)
    if n <= k:
        raise TooFewRows(f"TooFewRows: {n} observations for {k} coefficients")
    tss = float(np.sum((y - y.mean()) ** 2)) if intercept else float(y @ y)
    if tss == 0.0:
        raise DegenerateResponse(
            "DegenerateResponse: response has zero "
            + ("variance" if intercept else "sum of squares")
        )
    r2 = 1.0 - ssr / tss
    perfect = ssr <= 0.0 or 1.0 - r2 <= 0.0
    if perfect:
        r2 = 1.0
    fstat, f_p = f_statistic(r2, n, k, intercept)
    loglik = gaussian_loglik(ssr, n)
    aic, bic = information_criteria(loglik, k, n)
    return SummaryStatistics(r2, adjusted_r2(r2, n, k, intercept), fstat, f_p, loglik, aic, bic, perfect)


def t_inference(coef, stderr, df: int, level: float = 0.95) -> TInference:
    """t statistics, two-sided p-values and ``level`` confidence intervals."""
    coef = np.atleast_1d(np.asarray(coef, dtype=np.float64))
    stderr = np.atleast_1d(np.asarray(stderr, dtype=np.float64))
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"confidence level must lie in (0, 1), got {level}")
    with np.errstate(divide="ignore", invalid="ignore"):
        t = coef / stderr
    t = np.where((stderr == 0) & (coef == 0), 0.0, t)
    p = np.array([dist.student_t_two_sided(float(v), df) for v in t])
    crit = dist.student_t_quantile(0.5 + level / 2.0, df)
    half = crit * stderr
    return TInference(t, p, coef - half, coef + half)


def singular_values(X) -> np.ndarray:
    return np.linalg.svd(np.asarray(X, dtype=np.float64), compute_uv=False)


def condition_number(X) -> float:
    """Ratio of the largest to the smallest singular value of ``X``.

    Computed from the supplied matrix as is, with no column rescaling.
    Returns ``inf`` when the smallest singular value is zero at working
    precision.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    s = singular_values(X)
    if s.size == 0 or s[0] == 0.0:
        raise ValueError("condition number of a zero matrix is undefined")
    if X.shape[0] < X.shape[1]:
        return math.inf
    tol = s[0] * max(X.shape) * np.finfo(np.float64).eps
    if s[-1] <= tol:
        return math.inf
    return float(s[0] / s[-1])


def _qr_solve(X: np.ndarray, y: np.ndarray, names: Sequence[str]):
    n, k = X.shape
    Q, R, piv = scipy.linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = n * np.finfo(np.float64).eps * diag[0] if k else 0.0
    if k and (diag[0] == 0.0 or np.any(diag <= tol)):
        j = int(np.flatnonzero(diag <= tol)[0]) if diag[0] != 0.0 else 0
        raise RankDeficient(
            names[piv[j]],
            f"pivot {diag[j]:.3e} below tolerance {tol:.3e}",
        )
    beta_p = scipy.linalg.solve_triangular(R, Q.T @ y)
    r_inv = scipy.linalg.solve_triangular(R, np.eye(k))
    cov_p = r_inv @ r_inv.T
    inv = np.empty(k, dtype=np.intp)
    inv[piv] = np.arange(k)
    beta = beta_p[inv]
    xtx_inv = cov_p[np.ix_(inv, inv)]
    return beta, xtx_inv


def fit(
    X,
    y,
    intercept: bool = False,
    names: Sequence[str] | None = None,
    ci_level: float = 0.95,
    dep_name: str = "y",
) -> RegressionResult:
    """Least-squares fit of ``y`` on the columns of ``X``.

    Parameters
    ----------
    X : DesignMatrix or array_like, shape (n, k)
    y : array_like, shape (n,)
    intercept : bool
        Prepend a constant column named ``const``. Without it the reported
        R-squared is uncentered.
    names : sequence of str, optional
        Column names when ``X`` is a plain array.
    ci_level : float
        Confidence level of the coefficient intervals.

    Raises
    ------
    TooFewRows
        If there are not more observations than coefficients.
    RankDeficient
        If a column is linearly dependent on the others; the error names it.
    """
    if isinstance(X, DesignMatrix):
        names = list(X.names)
        A = np.array(X.rows)
    else:
        A = np.array(X, dtype=np.float64)
        if A.ndim == 1:
            A = A[:, None]
        names = list(names) if names is not None else [f"x{i + 1}" for i in range(A.shape[1])]
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if A.shape[0] != y.size:
        raise ValueError(f"X has {A.shape[0]} rows but y has {y.size} values")
    if intercept:
        A = np.column_stack([np.ones(A.shape[0]), A])
        names = ["const"] + names
    n, k = A.shape
    if k < 1:
        raise ValueError("no regressors")
    if n <= k:
        raise TooFewRows(f"TooFewRows: {n} observations for {k} coefficients")

    beta, xtx_inv = _qr_solve(A, y, names)
    fitted = A @ beta
    resid = y - fitted
    ssr = float(resid @ resid)
    df_resid = n - k
    s2 = ssr / df_resid
    stderr = np.sqrt(s2 * np.clip(np.diag(xtx_inv), 0.0, None))

    stats = summary_stats(ssr, y, n, k, intercept)
    inf = t_inference(beta, stderr, df_resid, ci_level)

    from .diagnostics import moments

    try:
        skew, kurt = moments(resid)
    except (ZeroVariance, TooShort):
        skew, kurt = math.nan, math.nan

    return RegressionResult(
        names=tuple(names),
        coef=beta,
        stderr=stderr,
        tstat=inf.tstat,
        pvalue=inf.pvalue,
        ci_low=inf.ci_low,
        ci_high=inf.ci_high,
        r2=stats.r2,
        adj_r2=stats.adj_r2,
        fstat=stats.fstat,
        f_pvalue=stats.f_pvalue,
        loglik=stats.loglik,
        aic=stats.aic,
        bic=stats.bic,
        nobs=n,
        df_resid=df_resid,
        df_model=k - int(intercept),
        ssr=ssr,
        residuals=resid,
        fitted=fitted,
        cond_no=condition_number(A),
        resid_skew=skew,
        resid_kurtosis=kurt,
        intercept=intercept,
        ci_level=ci_level,
        perfect_fit=stats.perfect_fit,
        dep_name=dep_name,
    )
