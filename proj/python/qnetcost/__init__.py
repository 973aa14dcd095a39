"""Cost analysis and simulation of distributed phase estimation."""

from ._core import (
    CapExceeded,
    ConfigError,
    CostParams,
    NoiseSpec,
    SchemeParams,
    compose_fidelity,
    ghz_fidelity,
    n_min_approx,
    p_success,
    precision,
    r1_required,
    r2_required,
    ratio_dephased,
    ratio_ideal,
    ratio_noisy,
    run_command,
    scan_window,
    simulate_success_probability,
    steps_for_target,
    empirical_precision,
)

__all__ = [
    "CapExceeded",
    "ConfigError",
    "CostParams",
    "NoiseSpec",
    "SchemeParams",
    "compose_fidelity",
    "empirical_precision",
    "ghz_fidelity",
    "n_min_approx",
    "p_success",
    "precision",
    "r1_required",
    "r2_required",
    "ratio_dephased",
    "ratio_ideal",
    "ratio_noisy",
    "run_command",
    "scan_window",
    "simulate_success_probability",
    "steps_for_target",
]
