"""
HARM

Hybrid resource management for split small-cell networks: TURA inside each
localized C-RAN and the CRC game between them, plus the centralized TURA,
CRC-only and RURA comparison schemes.
"""

from .config import HarmConfig, SolverMode
from .engine import HarmEngine, network_metrics, run_harm, run_rura
from .utils.DataStructures import NetworkSolution, SolutionMetrics

__all__ = [
    "HarmConfig",
    "SolverMode",
    "HarmEngine",
    "run_harm",
    "run_rura",
    "network_metrics",
    "NetworkSolution",
    "SolutionMetrics",
]
