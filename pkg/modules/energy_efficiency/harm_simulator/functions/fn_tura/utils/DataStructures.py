from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from ...fn_network_model.utils.DataStructures import Allocation


@dataclass(frozen=True)
class Candidate:
    """One particle: relaxed position with its historical best."""

    position: np.ndarray
    hist_best: np.ndarray
    fitness: float
    hist_best_fitness: float


@dataclass(frozen=True)
class SwarmState:
    """
    Swarm at iteration ``iteration``, stored as (I, D) arrays.
    """

    positions: np.ndarray
    fitness: np.ndarray
    hist_best: np.ndarray
    hist_best_fitness: np.ndarray
    global_best: np.ndarray
    global_best_fitness: float
    iteration: int = 0

    @property
    def swarm_size(self) -> int:
        return self.positions.shape[0]

    @property
    def mean_best(self) -> np.ndarray:
        return self.hist_best.mean(axis=0)

    @property
    def candidates(self) -> List[Candidate]:
        return [
            Candidate(
                position=self.positions[i],
                hist_best=self.hist_best[i],
                fitness=float(self.fitness[i]),
                hist_best_fitness=float(self.hist_best_fitness[i]),
            )
            for i in range(self.swarm_size)
        ]


@dataclass
class TuraResult:
    """Outcome of one TURA run on one group."""

    group: int
    allocation: Allocation
    best_position: np.ndarray
    best_fitness: float
    estimated_ee: float
    converged: bool
    iterations: int
    trace: List[float] = field(default_factory=list)
