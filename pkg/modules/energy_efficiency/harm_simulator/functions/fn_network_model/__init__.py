"""
Network Model

Topology, channel, rate, power and constraint model of the split small-cell
network.
"""

from .config import LineOfSight, ScenarioParams
from .utils.DataStructures import (
    Allocation,
    ConstraintReport,
    Deployment,
    InterferenceMode,
    PowerBreakdown,
)

__all__ = [
    "ScenarioParams",
    "LineOfSight",
    "Deployment",
    "Allocation",
    "PowerBreakdown",
    "ConstraintReport",
    "InterferenceMode",
]
