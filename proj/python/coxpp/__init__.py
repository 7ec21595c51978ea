"""Cox point process simulation and Stein bound verification."""

from ._core import (
    ConfigError,
    QuadratureError,
    Window,
    chord_length,
    chord_square_integral,
    coarea_ratio,
    cox_bound,
    effective_intensity,
    rate_regression,
    run_checks,
    run_experiment,
    sample_cox_line,
    sample_ppp,
    sample_satellites,
    satellite_bound,
    set_thread_count,
    support_radius,
)

__all__ = [
    "ConfigError",
    "QuadratureError",
    "Window",
    "chord_length",
    "chord_square_integral",
    "coarea_ratio",
    "cox_bound",
    "effective_intensity",
    "rate_regression",
    "run_checks",
    "run_experiment",
    "sample_cox_line",
    "sample_ppp",
    "sample_satellites",
    "satellite_bound",
    "set_thread_count",
    "support_radius",
]
