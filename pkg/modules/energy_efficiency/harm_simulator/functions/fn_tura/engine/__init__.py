"""
TURA engine: per-group problem definition and the QPSO solver.
"""

from .group_problem import GroupProblem, LinkMetrics
from .qpso_engine import (
    TuraEngine,
    beta,
    decode,
    decode_variables,
    enforce_power_budget,
    estimated_ee,
    evolve,
    fitness,
    gap_ratios,
    has_converged,
    initialize_swarm,
    penalty,
    relaxation_residual,
    run_tura,
    warm_start_position,
)

__all__ = [
    "GroupProblem",
    "LinkMetrics",
    "TuraEngine",
    "run_tura",
    "decode",
    "decode_variables",
    "penalty",
    "relaxation_residual",
    "estimated_ee",
    "fitness",
    "beta",
    "evolve",
    "initialize_swarm",
    "warm_start_position",
    "gap_ratios",
    "has_converged",
    "enforce_power_budget",
]
