# The OLS core against a brute-force solve
#
# fit() solves least squares by pivoted QR. Here it is compared with the
# textbook (X'X)^-1 X'y on a small problem, then pushed onto an
# ill-conditioned design where the normal equations lose digits.

# %%
import numpy as np

from econforces import ols

rng = np.random.default_rng(7)
X = rng.normal(size=(30, 4))
y = X @ np.array([0.5, -1.0, 0.0, 2.0]) + rng.normal(scale=0.5, size=30)
r = ols.fit(X, y, names=["a", "b", "c", "d"])

beta_ne = np.linalg.solve(X.T @ X, X.T @ y)
print("coef      ", np.round(r.coef, 6))
print("normal eq.", np.round(beta_ne, 6))
print("R2 (uncentered) %.4f  adj %.4f  F %.3f  p(F) %.2e" % (r.r2, r.adj_r2, r.fstat, r.f_pvalue))

# %%
# residuals are orthogonal to every column
print("X'e =", X.T @ r.residuals)

# %%
# near-collinear columns: cond(X) ~ 1e7, cond(X'X) ~ 1e14
t = np.linspace(0, 1, 40)
Xc = np.column_stack([np.ones_like(t), t, t + 1e-7 * rng.normal(size=t.size)])
yc = Xc @ np.array([1.0, 2.0, 3.0])
rc = ols.fit(Xc, yc)
ne = np.linalg.solve(Xc.T @ Xc, Xc.T @ yc)
print("cond(X) = %.2e" % rc.cond_no)
print("QR error          ", np.abs(rc.coef - [1, 2, 3]).max())
print("normal-eq. error  ", np.abs(ne - [1, 2, 3]).max())

# %%
# an exactly duplicated column is caught and named
try:
    ols.fit(np.column_stack([X, X[:, 1]]), y, names=["a", "b", "c", "d", "b_copy"])
except Exception as exc:
    print(type(exc).__name__, "->", exc)
