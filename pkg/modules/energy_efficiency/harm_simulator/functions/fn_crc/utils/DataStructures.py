from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ...fn_network_model.utils.DataStructures import Allocation


@dataclass(frozen=True)
class ActionSpace:
    """
    Finite joint actions of one CSC over its associated links.

    Action ``a`` gives link ``j`` (RSC ``links[j, 0]`` serving user
    ``links[j, 1]``) subchannel ``subchannels[a, j]`` at power level
    ``levels[a, j]``; -1 / 0 mark the no-assignment choice. Action 0 is the
    all-no-assignment action.
    """

    group: int
    assoc: np.ndarray  # (S, K) fixed association of the group
    links: np.ndarray  # (Lk, 2) (s, k)
    subchannels: np.ndarray  # (A, Lk) int
    levels: np.ndarray  # (A, Lk) int
    level_power: np.ndarray  # (L + 1,) W per level, level_power[0] = 0
    incumbent: int = 0
    full_size: int = 1  # joint actions before the cap and validity filtering

    @property
    def size(self) -> int:
        return self.subchannels.shape[0]

    @property
    def num_links(self) -> int:
        return self.links.shape[0]

    @property
    def powers(self) -> np.ndarray:
        """(A, Lk) transmit power of every link under every action."""
        return self.level_power[self.levels]


@dataclass
class PlayerState:
    """
    Learning state of one CSC.

    ``numerators[j, k]`` accumulates U(k, A_-c) - U(A) over the iterations in
    which action j was played.
    """

    action: int
    numerators: np.ndarray  # (A, A)
    probabilities: np.ndarray  # (A,)
    utility_total: float = 0.0

    def regrets(self, iteration: int) -> np.ndarray:
        if iteration == 0:
            return np.zeros_like(self.numerators)
        return np.maximum(self.numerators / iteration, 0.0)

    def average_utility(self, iteration: int) -> float:
        return self.utility_total / iteration if iteration else 0.0


@dataclass
class GameState:
    """All CSCs' learning state after ``iteration`` plays."""

    players: List[PlayerState]
    iteration: int = 0

    @property
    def profile(self) -> np.ndarray:
        return np.array([player.action for player in self.players], dtype=int)

    def max_regret(self) -> float:
        return max(float(player.regrets(self.iteration).max(initial=0.0)) for player in self.players)


@dataclass(frozen=True)
class ExchangedBeliefs:
    """Probability vectors received by ``receiver`` from every other CSC."""

    receiver: int
    beliefs: Dict[int, np.ndarray]


@dataclass
class CrcResult:
    """Outcome of one CRC game."""

    actions: np.ndarray  # (C,) selected action per CSC
    action_spaces: List[ActionSpace]
    allocation: Allocation
    power_bounds: np.ndarray  # (C, N)
    believed_foreign_power: List[np.ndarray]  # per receiving CSC, (C, S, K, N)
    converged: bool
    iterations: int
    max_regret: float
    trace: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))  # (iters, C) average utility
    play_counts: Optional[Dict[tuple, int]] = None


@dataclass
class LearningOutcome:
    """Result of the shared learning loop on any finite game."""

    state: GameState
    profile: np.ndarray
    converged: bool
    trace: np.ndarray  # (iters, C)
    play_counts: Dict[tuple, int]

    def empirical_distribution(self, shape: tuple) -> np.ndarray:
        """Joint frequency of the played (believed) profiles as an array of ``shape``."""
        distribution = np.zeros(shape)
        total = sum(self.play_counts.values())
        for profile, count in self.play_counts.items():
            distribution[profile] = count / total
        return distribution
