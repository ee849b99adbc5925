"""
TURA

Traffic-control-based user association and resource allocation inside one
localized C-RAN, solved with quantum-behaved particle swarm optimization.
"""

from .config import QpsoConfig
from .engine import GroupProblem, TuraEngine, run_tura
from .utils.DataStructures import Candidate, SwarmState, TuraResult

__all__ = ["QpsoConfig", "GroupProblem", "TuraEngine", "run_tura", "Candidate", "SwarmState", "TuraResult"]
