"""Macroeconomic factor attribution of stock index returns.

Monthly macro series are turned into economic factors (bill yield, oil,
production growth, expected and unexpected inflation, real rate, default
and term premia), standardized, and regressed without intercept on index
returns, with a full OLS summary and residual diagnostics.
"""

from .errors import (
    ConfigError,
    DataError,
    EconForcesError,
    NumericalError,
)
from .series import Frame, MonthStamp, Series
from .ols import RegressionResult, fit
from .diagnostics import DiagnosticsReport, diagnose
from .factors import FactorSet, build_factor_set
from .inflation import decompose_inflation, fit_ar
from .config import PipelineConfig, load_config
from .pipeline import run_pipeline

__version__ = "0.1.0"
