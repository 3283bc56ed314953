"""Coverage probability and ergodic rate of IoT-over-LEO satellite links.

Parameters are passed as a dict in config units, e.g. ``{"phi_s_deg": 35}``;
see ``default_params()`` for the keys.
"""

from ._leocov import (
    ConfigError,
    DomainError,
    Estimate,
    MetricResult,
    aer_ses,
    aer_ts,
    analyze,
    coverage_e2e,
    coverage_ses,
    coverage_ts,
    default_params,
    kummer_1f1,
    assumed_defaults,
    p_zero,
    r_max_km,
    simulate,
    simulate_aer_ses,
    simulate_aer_ts,
    simulate_coverage_ses,
    simulate_coverage_ts,
    validate,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Estimate",
    "MetricResult",
    "aer_ses",
    "aer_ts",
    "analyze",
    "coverage_e2e",
    "coverage_ses",
    "coverage_ts",
    "default_params",
    "kummer_1f1",
    "assumed_defaults",
    "p_zero",
    "r_max_km",
    "simulate",
    "simulate_aer_ses",
    "simulate_aer_ts",
    "simulate_coverage_ses",
    "simulate_coverage_ts",
    "validate",
]
