from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ...fn_network_model.utils.DataStructures import Allocation, Deployment
from ..config import SolverMode


@dataclass
class NetworkSolution:
    """
    Allocation of every group with its exact-interference EE.

    ``network_ee`` is the sum of group EEs, ``aggregate_ee`` the total
    delivered rate over the total consumed power. ``deployment`` is the view
    the allocation was solved on (centralized for TURA and RURA).
    """

    mode: SolverMode
    deployment: Deployment
    allocation: Allocation
    power_bounds: np.ndarray  # (C, N)
    group_ee: np.ndarray  # (C,)
    network_ee: float
    aggregate_ee: float
    converged: bool
    iterations: int
    onoff_enabled: bool = True
    outer_trace: List[float] = field(default_factory=list)
    traces: Dict[str, List[float]] = field(default_factory=dict)


@dataclass(frozen=True)
class SolutionMetrics:
    """Figures of merit of one solved drop."""

    ee_bits_per_joule: float
    outage_prob: float
    offload_prob: float
    iterations: int
