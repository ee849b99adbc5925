"""
HARM engine: mode handlers and the drop solver.
"""

from .harm_engine import HarmEngine, run_harm, run_rura
from .solution import build_solution, network_metrics, rsrp_allocation, solve_groups

__all__ = [
    "HarmEngine",
    "run_harm",
    "run_rura",
    "network_metrics",
    "build_solution",
    "rsrp_allocation",
    "solve_groups",
]
