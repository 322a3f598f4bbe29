"""Reproducible Monte Carlo campaigns, statistics, persistence, and the CLI."""

from .config import Experiment, ExperimentConfig, geometric_range
from .runner import (
    GaussMaxResult,
    TrialRecord,
    run_clt,
    run_gauss_max,
    run_lower_bound,
    run_upper_bound,
    run_variance_max,
)
from .stats import SummaryStats, ks_distance_normal, normal_cdf, normal_quantile
from .verify import CheckResult, run_all_checks, verify_report

__all__ = [
    "CheckResult",
    "Experiment",
    "ExperimentConfig",
    "GaussMaxResult",
    "SummaryStats",
    "TrialRecord",
    "geometric_range",
    "ks_distance_normal",
    "normal_cdf",
    "normal_quantile",
    "run_all_checks",
    "run_clt",
    "run_gauss_max",
    "run_lower_bound",
    "run_upper_bound",
    "run_variance_max",
    "verify_report",
]
