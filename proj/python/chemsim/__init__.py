"""Python bindings for the chemsim finite-volume solver."""

from ._chemsim import (
    ConfigError,
    LinearSolveError,
    StepError,
    canonical_config,
    chemo_divergence,
    eval_a,
    eval_a_prime,
    eval_a_second,
    eval_g,
    integrate,
    laplacian,
    power_gap,
    run_config,
    simulate,
    verify_identities,
)

__all__ = [
    "ConfigError",
    "LinearSolveError",
    "StepError",
    "canonical_config",
    "chemo_divergence",
    "eval_a",
    "eval_a_prime",
    "eval_a_second",
    "eval_g",
    "integrate",
    "laplacian",
    "power_gap",
    "run_config",
    "simulate",
    "verify_identities",
]
