"""Conclusive-exclusion toolkit: quantum CE, the 15/4 bound, bilocality."""

from ._core import (
    NONCONTEXTUAL_BOUND,
    __version__,
    best_classical_ce,
    ce_total,
    find_threshold,
    maximize_ce,
    possibilistic_verdict,
    quantum_behavior_ce,
    sweep_csv,
    tasks_json,
    toy_model_ce,
    verify_operational_identity,
)

__all__ = [
    "NONCONTEXTUAL_BOUND",
    "__version__",
    "best_classical_ce",
    "ce_total",
    "find_threshold",
    "maximize_ce",
    "possibilistic_verdict",
    "quantum_behavior_ce",
    "sweep_csv",
    "tasks_json",
    "toy_model_ce",
    "verify_operational_identity",
]
