# Expected and unexpected inflation
#
# Realized inflation is highly persistent in levels; its first difference is
# much less so. The default split fits an AR(2) to the differences and
# predicts one month ahead.

# %%
from pathlib import Path

import numpy as np

from econforces.ingest import Role, assemble, load_manifest
from econforces.inflation import acf_diagnosis, decompose_inflation, inflation_series

ROOT = Path(__file__).resolve().parents[1]
raw = assemble(load_manifest(ROOT / "fixtures" / "synthetic" / "manifest.toml"))
I = inflation_series(raw[Role.CPI])
print(len(I), "months of inflation, mean", I.values.mean())

# %%
levels, diffs = acf_diagnosis(I, 12)
print("lag   levels   diffs   (band +/-%.3f)" % levels.band)
for k, (a, b) in enumerate(zip(levels.r, diffs.r), start=1):
    print(f"{k:>3} {a:>8.3f} {b:>7.3f}")

# %%
for mode in ("differences", "levels"):
    d = decompose_inflation(I, mode=mode)
    ar = d.ar
    print(f"\n{mode}: AR({ar.order}) c={ar.intercept:.2e} phi={np.round(ar.coefficients, 4)} "
          f"sigma2={ar.sigma2:.3e} on {ar.nobs} rows")
    print("  UI std", d.UI.values.std(ddof=1), " EI std", d.EI.values.std(ddof=1))
    print("  first months:", [str(m) for m in d.EI.months[:3]])

# %%
# UI is I - EI by construction
d = decompose_inflation(I)
lookup = I.as_dict()
gap = max(abs(lookup[m] - (e + u)) for m, e, u in zip(d.EI.months, d.EI.values, d.UI.values))
print("max |I - (EI + UI)| =", gap)
