"""
Exhaustive Oracle

Ground truth on instances small enough to enumerate, and correlated
equilibrium checks on small games.
"""

from .config import OracleLimits
from .engine import oracle_optimum, project_to_grid, verify_ce
from .utils.DataStructures import OracleResult

__all__ = ["OracleLimits", "OracleResult", "oracle_optimum", "project_to_grid", "verify_ce"]
