# Reading the residual diagnostics
#
# Runs the full pipeline on the fixture and looks at the statistics printed
# under the coefficient table: Durbin-Watson, Jarque-Bera, the omnibus K2,
# and the Q-Q data.

# %%
from pathlib import Path

import numpy as np

from econforces import diagnostics as dg
from econforces.config import load_config
from econforces.pipeline import run_pipeline
from econforces.report import ar_summary_text, render_report

ROOT = Path(__file__).resolve().parents[1]
config = load_config(ROOT / "fixtures" / "synthetic" / "fixture.toml")
run = run_pipeline(config)
print(render_report(run.result, run.diagnostics, config.report_date(), config.vintage,
                    ar_summary_text(run.factors.inflation)))

# %%
d = run.diagnostics
print("Durbin-Watson %.4f -> %s" % (d.dw, d.dw_text))
for value in (0.9, 1.5, 2.0, 2.5, 3.1):
    print(f"  d={value}: {dg.dw_label(value)}")

# %%
# both normality statistics come from the residual skew and kurtosis
S, K = d.skew, d.kurtosis
n = run.result.nobs
print("JB from moments:", dg.jarque_bera_from_moments(S, K, n))
print("K2 from moments:", dg.omnibus_from_moments(S, K, n))

# %%
# a fat-tailed sample for comparison
e = np.random.default_rng(1).standard_t(3, size=n)
print("t(3) sample: JB %.2f (p %.3g), K2 %.2f (p %.3g)" % (*dg.jarque_bera(e), *dg.omnibus_k2(e)))

# %%
# Q-Q: theoretical normal quantiles against standardized sorted residuals
qq = d.qq
slope, intercept = np.polyfit(qq[:, 0], qq[:, 1], 1)
print("Q-Q fit slope %.3f intercept %.3f" % (slope, intercept))
print("most extreme points:", qq[0], qq[-1])
