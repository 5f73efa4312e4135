"""Brute-force reference computations, independent of the package code paths."""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, optimize


def full_pivot_solve(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve ``A X = B`` by Gaussian elimination with full pivoting."""
    A = np.array(A, dtype=np.float64)
    B = np.array(B, dtype=np.float64)
    if B.ndim == 1:
        B = B[:, None]
    n = A.shape[0]
    col_perm = list(range(n))
    for k in range(n):
        sub = np.abs(A[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        i += k
        j += k
        if A[i, j] == 0.0:
            raise np.linalg.LinAlgError("singular")
        A[[k, i]] = A[[i, k]]
        B[[k, i]] = B[[i, k]]
        A[:, [k, j]] = A[:, [j, k]]
        col_perm[k], col_perm[j] = col_perm[j], col_perm[k]
        for r in range(k + 1, n):
            f = A[r, k] / A[k, k]
            A[r, k:] -= f * A[k, k:]
            B[r] -= f * B[k]
    Xp = np.zeros_like(B)
    for k in range(n - 1, -1, -1):
        Xp[k] = (B[k] - A[k, k + 1:] @ Xp[k + 1:]) / A[k, k]
    X = np.empty_like(Xp)
    X[col_perm] = Xp
    return X


def normal_equations_ols(X: np.ndarray, y: np.ndarray, intercept: bool = False) -> dict:
    """OLS from ``(X'X)^-1 X'y`` with the summary numbers that follow from it."""
    X = np.asarray(X, dtype=np.float64)
    if intercept:
        X = np.column_stack([np.ones(X.shape[0]), X])
    n, k = X.shape
    xtx = X.T @ X
    inv = full_pivot_solve(xtx, np.eye(k))
    beta = full_pivot_solve(xtx, X.T @ y)[:, 0]
    resid = y - X @ beta
    ssr = float(resid @ resid)
    s2 = ssr / (n - k)
    tss = float(((y - y.mean()) ** 2).sum()) if intercept else float(y @ y)
    r2 = 1 - ssr / tss
    df_model = k - int(intercept)
    f = (r2 / df_model) / ((1 - r2) / (n - k))
    return {
        "beta": beta,
        "stderr": np.sqrt(s2 * np.diag(inv)),
        "r2": r2,
        "f": f,
        "ssr": ssr,
    }


def jacobi_singular_values(X: np.ndarray, sweeps: int = 60) -> np.ndarray:
    """One-sided Jacobi: rotate column pairs until all are orthogonal."""
    U = np.array(X, dtype=np.float64)
    k = U.shape[1]
    for _ in range(sweeps):
        off = 0.0
        for p in range(k - 1):
            for q in range(p + 1, k):
                alpha = U[:, p] @ U[:, p]
                beta = U[:, q] @ U[:, q]
                gamma = U[:, p] @ U[:, q]
                if gamma == 0.0:
                    continue
                off = max(off, abs(gamma) / math.sqrt(alpha * beta))
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                up = U[:, p].copy()
                U[:, p] = c * up - s * U[:, q]
                U[:, q] = s * up + c * U[:, q]
        if off < 1e-15:
            break
    return np.sort(np.sqrt(np.einsum("ij,ij->j", U, U)))[::-1]


def t_density(x: float, df: float) -> float:
    c = math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2)) / math.sqrt(df * math.pi)
    return c * (1 + x * x / df) ** (-(df + 1) / 2)


def t_cdf_by_quadrature(x: float, df: float) -> float:
    val, _ = integrate.quad(t_density, 0.0, abs(x), args=(df,), epsabs=1e-14, epsrel=1e-13)
    return 0.5 + math.copysign(val, x)


def t_quantile_by_quadrature(p: float, df: float) -> float:
    return optimize.brentq(lambda x: t_cdf_by_quadrature(x, df) - p, -50, 50, xtol=1e-14)


def pearson(x, y) -> float:
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    n = x.size
    mx, my = sum(x) / n, sum(y) / n
    sx = math.sqrt(sum((a - mx) ** 2 for a in x) / (n - 1))
    sy = math.sqrt(sum((b - my) ** 2 for b in y) / (n - 1))
    return sum((a - mx) * (b - my) for a, b in zip(x, y)) / ((n - 1) * sx * sy)
