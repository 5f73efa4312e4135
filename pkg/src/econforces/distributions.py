"""Distribution functions used for p-values and confidence intervals.

The Student t and F tails go through the regularized incomplete beta
function, evaluated by its continued fraction (modified Lentz). The
chi-square tail uses the regularized upper incomplete gamma function, which
for two degrees of freedom reduces to ``exp(-x/2)``.
"""

from __future__ import annotations

import math

from .errors import DomainError

_EPS = 1e-16
_TINY = 1e-300
_MAXIT = 500


def _betacf(a: float, b: float, x: float) -> float:
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function ``I_x(a, b)``."""
    if a <= 0 or b <= 0:
        raise DomainError(f"betainc needs a, b > 0 (got a={a}, b={b})")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"betainc needs 0 <= x <= 1 (got {x})")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    # the continued fraction converges fast only on this side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _betacf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _betacf(b, a, 1.0 - x) / b


def _betainc_upper(a: float, b: float, x: float) -> float:
    """``1 - I_x(a, b)`` without cancellation in the far tail."""
    if x == 0.0:
        return 1.0
    if x == 1.0:
        return 0.0
    return betainc(b, a, 1.0 - x)


def student_t_cdf(x: float, df: float) -> float:
    if df <= 0:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    tail = 0.5 * betainc(df / 2.0, 0.5, df / (df + x * x))
    return 1.0 - tail if x > 0 else tail


def student_t_sf(x: float, df: float) -> float:
    return student_t_cdf(-x, df)


def student_t_two_sided(t: float, df: float) -> float:
    """``P(|T| > |t|)`` for a t variable with ``df`` degrees of freedom."""
    if df <= 0:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    if math.isinf(t):
        return 0.0
    return min(1.0, betainc(df / 2.0, 0.5, df / (df + t * t)))


def student_t_pdf(x: float, df: float) -> float:
    logc = math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    return math.exp(logc - (df + 1) / 2 * math.log1p(x * x / df))


def student_t_quantile(p: float, df: float) -> float:
    """Inverse of :func:`student_t_cdf` by safeguarded Newton iteration."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile probability must lie in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -student_t_quantile(1.0 - p, df)
    lo, hi = 0.0, 1.0
    while student_t_cdf(hi, df) < p:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            raise ArithmeticError("t quantile bracket overflow")
    x = min(max(normal_quantile(p), lo), hi)
    for _ in range(200):
        f = student_t_cdf(x, df) - p
        if f > 0:
            hi = x
        else:
            lo = x
        step = f / student_t_pdf(x, df)
        nxt = x - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-15 * max(1.0, abs(x)):
            return nxt
        x = nxt
    return x


def f_survival(x: float, d1: float, d2: float) -> float:
    """``P(F > x)`` for an F(d1, d2) variable."""
    if d1 <= 0 or d2 <= 0:
        raise DomainError(f"F degrees of freedom must be positive, got ({d1}, {d2})")
    if x < 0:
        raise DomainError(f"F survival needs x >= 0, got {x}")
    if math.isinf(x):
        return 0.0
    return betainc(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * x))


def _gammainc_upper(a: float, x: float) -> float:
    """Regularized upper incomplete gamma ``Q(a, x)``."""
    if x == 0.0:
        return 1.0
    log_front = -x + a * math.log(x) - math.lgamma(a)
    if x < a + 1.0:
        # series for the lower function P(a, x)
        ap, total = a, 1.0 / a
        term = total
        for _ in range(_MAXIT * 4):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        return max(0.0, 1.0 - total * math.exp(log_front))
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAXIT * 4):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(log_front) * h


def chi2_survival(x: float, df: float) -> float:
    """``P(X > x)`` for a chi-square variable; exact ``exp(-x/2)`` when df = 2."""
    if df <= 0:
        raise DomainError(f"chi-square degrees of freedom must be positive, got {df}")
    if x < 0:
        raise DomainError(f"chi-square survival needs x >= 0, got {x}")
    if df == 2:
        return math.exp(-x / 2.0)
    return _gammainc_upper(df / 2.0, x / 2.0)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


# Acklam's rational approximation (relative error <= 1.15e-9)
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def normal_quantile(p: float) -> float:
    """Standard normal quantile.

    Rational approximation followed by one Halley step against ``erfc``,
    which takes the result to near machine precision.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal quantile needs p in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        x = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    elif p <= 1.0 - _P_LOW:
        q = p - 0.5
        r = q * q
        x = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
            (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)
    else:
        q = math.sqrt(-2.0 * math.log1p(-p))
        x = -(((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    if p < 0.5:
        e = normal_cdf(x) - p
    else:
        # work with the upper tail to keep precision near p = 1
        e = (1.0 - p) - 0.5 * math.erfc(x / math.sqrt(2.0))
    u = e * math.sqrt(2.0 * math.pi) * math.exp(x * x / 2.0)
    return x - u / (1.0 + x * u / 2.0)
