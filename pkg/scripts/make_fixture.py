"""Regenerate the bundled synthetic dataset in fixtures/synthetic/.

Magnitudes roughly follow published monthly US data for 2011-2021: near-zero
bill yields with one hiking cycle, a sharp 2020 drop in production and oil,
persistent low inflation, and index returns that load on the factors plus
noise. Everything is drawn from one seeded generator, so rerunning the
script reproduces the checked-in files byte for byte.

    python scripts/make_fixture.py
"""

from __future__ import annotations

import datetime as dt
from pathlib import Path

import numpy as np

SEED = 20211011
OUT = Path(__file__).resolve().parents[1] / "fixtures" / "synthetic"

FIRST = (2010, 1)  # files start before the analysis window to exercise clipping
LAST = (2021, 10)


def month_range(first, last):
    y, m = first
    out = []
    while (y, m) <= last:
        out.append((y, m))
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)
    return out


def write_fred(path: Path, header: str, months, values, fmt: str, missing=()):
    lines = [header]
    for (y, m), v in zip(months, values):
        text = "." if (y, m) in missing else format(v, fmt)
        lines.append(f"{y:04d}-{m:02d}-01,{text}")
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    rng = np.random.default_rng(SEED)
    months = month_range(FIRST, LAST)
    n = len(months)
    idx = {ym: i for i, ym in enumerate(months)}
    covid = idx[(2020, 3)]

    # industrial production: small monthly growth, 2020 collapse and rebound
    mp = rng.normal(0.0008, 0.0065, n)
    mp[covid] = -0.046
    mp[covid + 1] = -0.136
    mp[covid + 2] = 0.062
    mp[covid + 3] = 0.055
    ip = 92.0 * np.exp(np.cumsum(mp))

    # oil: heavy-tailed monthly log changes, 2020 crash
    og = rng.standard_t(5, n) * 0.075
    og[covid] = -0.669
    og[covid + 1] = -0.35
    og[covid + 2] = 0.411
    ppi = 250.0 * np.exp(np.cumsum(og))

    # inflation: slowly drifting mean plus AR(2) noise
    drift = 0.0016 + np.cumsum(rng.normal(0.0, 0.00012, n))
    drift -= drift.mean() - 0.0016
    noise = np.zeros(n)
    shocks = rng.normal(0.0, 0.0018, n)
    for t in range(2, n):
        noise[t] = 0.35 * noise[t - 1] - 0.2 * noise[t - 2] + shocks[t]
    infl = drift + noise
    infl[covid + 1] = -0.0067
    infl[-6:] += 0.003
    cpi = 218.0 * np.exp(np.cumsum(infl))

    # bill yield in decimal units, rounded to 0.001 like the published series
    tb = np.zeros(n)
    hike = idx[(2016, 1)]
    peak = idx[(2019, 6)]
    for i in range(hike, peak):
        tb[i] = 0.010 * (i - hike) / (peak - hike)
    for i in range(peak, covid):
        tb[i] = 0.010 - 0.003 * (i - peak) / (covid - peak)
    tb = np.clip(np.round(tb + rng.normal(0.0, 0.0004, n), 3), 0.0, None)

    # long government bond and low-grade bond yields (decimal)
    lgb = 0.0215 + np.cumsum(rng.normal(0.0, 0.0022, n))
    lgb = np.round(lgb - (lgb.mean() - 0.0215), 4)
    spread = np.zeros(n)
    spread[0] = 0.027
    for t in range(1, n):
        spread[t] = 0.027 + 0.9 * (spread[t - 1] - 0.027) + rng.normal(0.0, 0.002)
    spread[covid:covid + 3] += 0.008
    low = np.round(lgb + spread, 4)

    # index returns loading on the contemporaneous factors
    def z(x):
        return (x - x.mean()) / x.std()

    tb_lag = np.concatenate([[tb[0]], tb[:-1]])
    rho = tb_lag - infl
    upr = low - lgb
    uts = lgb - tb_lag
    signal = (
        -0.25 * z(tb) + 0.40 * z(og) - 0.20 * z(mp) + 0.10 * z(infl)
        + 0.20 * z(rho) - 0.15 * z(upr) - 0.05 * z(uts)
    )
    ret = 0.011 + 0.04 * signal + rng.normal(0.0, 0.035, n)
    month_end_price = 110.0 * np.cumprod(1.0 + ret)

    # business-day closes bridging the month-end targets
    rows = []
    prev_log = np.log(month_end_price[0] / (1.0 + ret[0]))
    for i, (y, m) in enumerate(months):
        start = dt.date(y, m, 1)
        nxt = dt.date(y + (m == 12), 1 if m == 12 else m + 1, 1)
        days = [start + dt.timedelta(d) for d in range((nxt - start).days)]
        days = [d for d in days if d.weekday() < 5]
        target = np.log(month_end_price[i])
        k = len(days)
        walk = np.cumsum(rng.normal(0.0, 0.009, k))
        bridge = walk - np.arange(1, k + 1) / k * walk[-1]
        path = prev_log + (target - prev_log) * np.arange(1, k + 1) / k + bridge
        for d, lp in zip(days, path):
            adj = float(np.exp(lp))
            close = adj / 0.985  # unadjusted close ignores dividends
            rows.append((d, close * 1.001, close * 1.008, close * 0.992, close, adj,
                         int(rng.integers(40_000_000, 160_000_000))))
        prev_log = target

    OUT.mkdir(parents=True, exist_ok=True)
    write_fred(OUT / "INDPRO.csv", "DATE,INDPRO", months, ip, ".4f")
    write_fred(OUT / "CPIAUCSL.csv", "DATE,CPIAUCSL", months, cpi, ".3f",
               missing={(2010, 6)})
    write_fred(OUT / "TB3MS.csv", "observation_date,TB3MS", months, tb, ".3f")
    write_fred(OUT / "WPU0561.csv", "DATE,WPU0561", months, ppi, ".3f")
    write_fred(OUT / "LTGOV.csv", "DATE,LTGOV", months, lgb, ".4f")
    write_fred(OUT / "BAA.csv", "DATE,BAA", months, low, ".4f")
    lines = ["Date,Open,High,Low,Close,Adj Close,Volume"]
    for d, o, h, lo, c, a, v in rows:
        lines.append(f"{d.isoformat()},{o:.6f},{h:.6f},{lo:.6f},{c:.6f},{a:.6f},{v}")
    (OUT / "SPY.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
