# Building the factor set from the bundled synthetic data
#
# Walks the pipeline one stage at a time: manifest -> raw monthly series ->
# factors -> aligned, standardized frame. Run from the repository root.

# %%
from pathlib import Path

import numpy as np

from econforces.factors import build_factor_set
from econforces.ingest import assemble, load_manifest
from econforces.series import describe

ROOT = Path(__file__).resolve().parents[1]
manifest = load_manifest(ROOT / "fixtures" / "synthetic" / "manifest.toml")
print("window", manifest.start, "..", manifest.end)
for e in manifest.entries:
    print(f"  {e.role.value:<16} {e.series_id:<9} {e.path.name}")

# %%
# every role loads, gets resampled to months and clipped to the window
raw = assemble(manifest)
for rec in raw.load_report:
    print(f"{rec.role:<16} parsed {rec.parsed:>5}  monthly {rec.monthly:>4}  kept {rec.kept:>4}  {rec.first}..{rec.last}")
print("index returns:", len(raw.returns), "months from", raw.returns.months[0])

# %%
fs = build_factor_set(raw)
print("columns:", fs.columns)
print("nobs:", fs.nobs, "| dropped at the edges:", fs.dropped_months, "| binding factor:", fs.binding_factor)
for name, (first, last, n) in fs.spans.items():
    print(f"  {name:<7} {first}..{last} ({n})")

# %%
# descriptive statistics in natural units
stats = describe(fs.raw)
print(f"{'':<7}" + "".join(f"{c:>10}" for c in ("mean", "std", "min", "50%", "max")))
for name, s in stats.items():
    print(f"{name:<7}{s.mean:>10.4f}{s.std:>10.4f}{s.min:>10.4f}{s.q50:>10.4f}{s.max:>10.4f}")

# %%
# the regression frame is standardized column by column, response included
z = fs.frame.matrix(fs.columns)
print("max |mean|:", np.abs(z.mean(axis=0)).max())
print("max |std - 1|:", np.abs(z.std(axis=0, ddof=1) - 1).max())
