"""Text report, JSON result and plot-data files for a pipeline run."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .diagnostics import DW_LOWER, DW_UPPER, DiagnosticsReport
from .ols import RegressionResult
from .series import SummaryStats, correlation_matrix, describe

SCHEMA_VERSION = "1"
WIDTH = 78
RULE = "=" * WIDTH
THIN = "-" * WIDTH


def _fmt(x: float, spec: str) -> str:
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return format(x, spec)


def _pair(label: str, value: str, width: int) -> str:
    pad = width - len(label) - len(value)
    return label + " " * max(pad, 1) + value


def _header_line(left, right) -> str:
    lhs = _pair(*left, 38) if left else " " * 38
    rhs = _pair(*right, 37) if right else ""
    return (lhs + "   " + rhs).rstrip()


def coef_table_header(ci_level: float = 0.95) -> str:
    lo = f"[{(1 - ci_level) / 2:.3f}"
    hi = f"{1 - (1 - ci_level) / 2:.3f}]"
    return f"{'':<11}{'coef':>10}{'std err':>11}{'t':>11}{'P>|t|':>11}{lo:>12}{hi:>12}"


def coef_row(name: str, coef, se, t, p, lo, hi) -> str:
    """One coefficient line: coef to 4 decimals, everything else to 3."""
    return (
        f"{name:<11}{_fmt(coef, '.4f'):>10}{_fmt(se, '.3f'):>11}{_fmt(t, '.3f'):>11}"
        f"{_fmt(p, '.3f'):>11}{_fmt(lo, '.3f'):>12}{_fmt(hi, '.3f'):>12}"
    )


def render_report(
    result: RegressionResult,
    diagnostics: DiagnosticsReport,
    run_date: str = "",
    vintage: str = "",
    ar_summary: str = "",
) -> str:
    """Fixed-width regression summary in the familiar OLS results layout."""
    tag = "" if result.intercept else " (uncentered)"
    head = [
        (("Dep. Variable:", result.dep_name), (f"R-squared{tag}:", _fmt(result.r2, ".3f"))),
        (("Model:", "OLS"), (f"Adj. R-squared{tag}:", _fmt(result.adj_r2, ".3f"))),
        (("Method:", "Least Squares"), ("F-statistic:", _fmt(result.fstat, "#.4g"))),
        (("Date:", run_date), ("Prob (F-statistic):", _fmt(result.f_pvalue, "#.3g"))),
        (("Vintage:", vintage), ("Log-Likelihood:", _fmt(result.loglik, "#.5g"))),
        (("No. Observations:", str(result.nobs)), ("AIC:", _fmt(result.aic, "#.4g"))),
        (("Df Residuals:", str(result.df_resid)), ("BIC:", _fmt(result.bic, "#.4g"))),
        (("Df Model:", str(result.df_model)), None),
        (("Covariance Type:", "nonrobust"), None),
    ]
    lines = ["OLS Regression Results".center(WIDTH).rstrip(), RULE]
    lines += [_header_line(l, r) for l, r in head]
    lines += [RULE, coef_table_header(result.ci_level), THIN]
    for j, name in enumerate(result.names):
        lines.append(
            coef_row(
                name,
                float(result.coef[j]),
                float(result.stderr[j]),
                float(result.tstat[j]),
                float(result.pvalue[j]),
                float(result.ci_low[j]),
                float(result.ci_high[j]),
            )
        )
    d = diagnostics
    foot = [
        (("Omnibus:", _fmt(d.omnibus, ".3f")), ("Durbin-Watson:", _fmt(d.dw, ".3f"))),
        (("Prob(Omnibus):", _fmt(d.omnibus_p, ".3f")), ("Jarque-Bera (JB):", _fmt(d.jb, ".3f"))),
        (("Skew:", _fmt(d.skew, ".3f")), ("Prob(JB):", _fmt(d.jb_p, ".3g"))),
        (("Kurtosis:", _fmt(d.kurtosis, ".3f")), ("Cond. No.", _fmt(result.cond_no, "#.3g"))),
    ]
    lines += [RULE]
    lines += [_header_line(l, r) for l, r in foot]
    lines += [RULE, "", "Notes:"]
    lines.append("[1] Standard Errors assume that the covariance matrix of the errors is correctly specified.")
    if not result.intercept:
        lines.append("[2] R-squared is computed without centering since the model has no constant.")
    if result.perfect_fit:
        lines.append("[3] Residuals are zero: the F-statistic is reported as inf.")
    lines += [
        "",
        f"Durbin-Watson: {d.dw!r}",
        f"{d.dw_text} (no-autocorrelation band {DW_LOWER} <= d <= {DW_UPPER})",
    ]
    if ar_summary:
        lines += ["", ar_summary]
    return "\n".join(lines) + "\n"


def ar_summary_text(decomposition) -> str:
    ar = decomposition.ar
    target = "first differences of inflation" if decomposition.mode == "differences" else "inflation levels"
    coefs = ", ".join(f"{c:.4f}" for c in ar.coefficients)
    return (
        f"Expected inflation: AR({ar.order}) on {target}, {ar.nobs} obs, "
        f"intercept {ar.intercept:.6f}, lag coefficients [{coefs}], sigma2 {ar.sigma2:.3e}"
    )


# JSON


RESULT_KEYS = ("schema_version", "dependent", "months", "regression", "diagnostics")


def result_to_json(
    result: RegressionResult,
    diagnostics: DiagnosticsReport,
    months: Sequence | None = None,
) -> str:
    """Serialize a fit and its diagnostics at full precision.

    Non-finite floats are written as ``Infinity``/``NaN``, which
    :func:`json.loads` reads back.
    """
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dependent": result.dep_name,
        "months": [str(m) for m in months] if months is not None else None,
        "regression": result.to_dict(),
        "diagnostics": diagnostics.to_dict(),
    }
    return json.dumps(doc, indent=2) + "\n"


def result_from_json(text: str) -> tuple[RegressionResult, DiagnosticsReport]:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    return RegressionResult.from_dict(doc["regression"]), DiagnosticsReport.from_dict(doc["diagnostics"])


# plot data


def _num(x) -> str:
    return "%.12g" % x


def write_csv(path: Path, header: Sequence[str], rows) -> Path:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if isinstance(v, (float, np.floating)) else v for v in row])
    path.write_text(buf.getvalue())
    return path


@dataclass
class RunArtifacts:
    out_dir: Path
    files: list[Path] = field(default_factory=list)

    def add(self, path: Path) -> Path:
        self.files.append(path)
        return path

    @property
    def names(self) -> list[str]:
        return sorted(str(p.relative_to(self.out_dir)) for p in self.files)


def write_describe(factors, out_dir: Path, artifacts: RunArtifacts | None = None) -> Path:
    stats = describe(factors.raw)
    cols = factors.raw.names
    rows = []
    for i, label in enumerate(SummaryStats.ROWS):
        row = [label]
        for c in cols:
            v = stats[c].as_row()[i]
            row.append(int(v) if label == "count" else float(v))
        rows.append(row)
    path = write_csv(out_dir / "describe.csv", ["stat"] + cols, rows)
    if artifacts is not None:
        artifacts.add(path)
    return path


def emit_factor_plots(factors, acf_levels, acf_diff, out_dir: Path, artifacts: RunArtifacts) -> None:
    """Scatter, time, correlation and ACF plot data from the factor stage."""
    plot = out_dir / "plotdata"
    plot.mkdir(parents=True, exist_ok=True)
    raw = factors.raw
    months = [str(m) for m in raw.index]
    y = raw[factors.response]
    for name in factors.regressors:
        artifacts.add(write_csv(plot / f"scatter_{name}.csv", ["x", "y"], zip(map(float, raw[name]), map(float, y))))
    for name in raw.names:
        artifacts.add(write_csv(plot / f"timeplot_{name}.csv", ["month", "value"], zip(months, map(float, raw[name]))))
    corr = correlation_matrix(raw.select(factors.regressors))
    artifacts.add(
        write_csv(
            plot / "corr_matrix.csv",
            [""] + list(corr.labels),
            ([lab] + [float(v) for v in corr.values[i]] for i, lab in enumerate(corr.labels)),
        )
    )
    for fname, a in (("acf_levels.csv", acf_levels), ("acf_diff.csv", acf_diff)):
        r0 = a.with_lag0()
        artifacts.add(
            write_csv(
                plot / fname,
                ["lag", "acf", "band_low", "band_high"],
                ((k, float(v), -a.band, a.band) for k, v in enumerate(r0)),
            )
        )


def emit_fit_plots(factors, result, diagnostics, out_dir: Path, artifacts: RunArtifacts) -> None:
    """Actual-vs-fitted, Q-Q and residual-vs-fitted plot data."""
    plot = out_dir / "plotdata"
    plot.mkdir(parents=True, exist_ok=True)
    months = [str(m) for m in factors.frame.index]
    artifacts.add(
        write_csv(
            plot / "fitted_vs_actual.csv",
            ["month", "actual", "fitted"],
            zip(months, map(float, factors.y), map(float, result.fitted)),
        )
    )
    artifacts.add(write_csv(plot / "qq.csv", ["theoretical", "sample"], (map(float, r) for r in diagnostics.qq)))
    artifacts.add(
        write_csv(
            plot / "resid_fitted.csv",
            ["month", "fitted", "residual"],
            ((m, float(f), float(e)) for m, (f, e) in zip(months, diagnostics.resid_fitted)),
        )
    )


def emit_plot_data(factors, result, diagnostics, acf_pair, out_dir: Path | str) -> RunArtifacts:
    """Write every plot-data CSV plus ``describe.csv`` under ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts = RunArtifacts(out_dir)
    write_describe(factors, out_dir, artifacts)
    emit_factor_plots(factors, acf_pair[0], acf_pair[1], out_dir, artifacts)
    emit_fit_plots(factors, result, diagnostics, out_dir, artifacts)
    return artifacts
