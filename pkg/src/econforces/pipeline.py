"""End-to-end orchestration: manifest -> raw data -> factors -> fit -> diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import ols
from .config import PipelineConfig
from .diagnostics import DiagnosticsReport, diagnose
from .factors import FactorSet, build_factor_set
from .inflation import acf_diagnosis
from .ingest import DataManifest, RawDataset, assemble, load_manifest
from .series import Autocorrelation

STAGES = ("ingest", "build", "fit", "diagnose")


@dataclass
class PipelineRun:
    config: PipelineConfig
    manifest: DataManifest
    raw: RawDataset | None = None
    factors: FactorSet | None = None
    acf_levels: Autocorrelation | None = None
    acf_diff: Autocorrelation | None = None
    result: ols.RegressionResult | None = None
    diagnostics: DiagnosticsReport | None = None


def load_inputs(config: PipelineConfig) -> DataManifest:
    manifest = load_manifest(config.manifest)
    if config.start is not None or config.end is not None:
        manifest = replace(
            manifest,
            start=config.start or manifest.start,
            end=config.end or manifest.end,
        )
    return manifest


def fit_factors(factors: FactorSet, ci_level: float = 0.95) -> ols.RegressionResult:
    """No-intercept OLS of the standardized response on the standardized factors."""
    return ols.fit(
        factors.design(),
        factors.y,
        intercept=not factors.standardized,
        ci_level=ci_level,
        dep_name=factors.response,
    )


def run_pipeline(config: PipelineConfig, through: str = "diagnose") -> PipelineRun:
    """Run the stages up to and including ``through``."""
    if through not in STAGES:
        raise ValueError(f"unknown stage {through!r}; expected one of {STAGES}")
    last = STAGES.index(through)
    run = PipelineRun(config, load_inputs(config))
    run.raw = assemble(run.manifest, returns=config.returns)
    if last < 1:
        return run
    run.factors = build_factor_set(
        run.raw,
        ar_order=config.ar_order,
        ar_mode=config.ar_mode,
        yp_enabled=config.yp_enabled,
    )
    max_lag = min(config.acf_max_lag, len(run.factors.inflation.I) - 2)
    run.acf_levels, run.acf_diff = acf_diagnosis(run.factors.inflation.I, max_lag)
    if last < 2:
        return run
    run.result = fit_factors(run.factors, config.ci_level)
    if last < 3:
        return run
    run.diagnostics = diagnose(run.result)
    return run
