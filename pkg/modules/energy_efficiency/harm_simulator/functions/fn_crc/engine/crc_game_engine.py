"""
CRC Game Engine

Cooperative resource competition between CSCs: every CSC learns a
probability vector over its discrete actions with conditional regret
matching, shares it with the other CSCs over an error-prone exchange, and
plays the action its vector selects. The learning loop is shared between the
network game and fixed finite games given as payoff tensors.

Features:
- Conditional regrets from counterfactual utilities against the believed
  opponent profile of every iteration
- Probability update with a self-adjusting normalizer xi
- Multiplicative Gaussian noise on exchanged vectors, identity at rho = 0
- Argmax or inverse-CDF action selection
- Relative utility change held for a window of iterations as the stop rule,
  on the realized utilities or on their running average
- Per-group power bounds and believed foreign powers for the next TURA round
"""

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import replace
from typing import Dict, List, Optional, Sequence

import numpy as np

from ...fn_network_model.config import ScenarioParams
from ...fn_network_model.utils.DataStructures import Allocation, Deployment
from ...shared.logger import SimulationLogger
from ...shared.rng import derive_rng
from ..config import CrcConfig, SelectionRule, StopRule
from ..utils.DataStructures import (
    ActionSpace,
    CrcResult,
    ExchangedBeliefs,
    GameState,
    LearningOutcome,
    PlayerState,
)
from .action_space import action_to_power, build_action_space, joint_allocation

# Stream purposes for derive_rng
_SAMPLING_STREAM = 0
_SELECTION_STREAM = 1
_EXCHANGE_STREAM = 2


class FiniteGame(ABC):
    """A finite game whose utilities can be queried per player and opponent profile."""

    @property
    @abstractmethod
    def num_players(self) -> int:
        pass

    @abstractmethod
    def num_actions(self, c: int) -> int:
        pass

    @abstractmethod
    def utilities(self, c: int, profile: np.ndarray) -> np.ndarray:
        """U_c(a, profile_-c) for every action a of player c."""
        pass


class MatrixGame(FiniteGame):
    """Game given by one payoff tensor of shape (A_1, ..., A_C) per player."""

    def __init__(self, payoffs: Sequence[np.ndarray]):
        self.payoffs = [np.asarray(p, dtype=float) for p in payoffs]
        shape = self.payoffs[0].shape
        if len(shape) != len(self.payoffs) or any(p.shape != shape for p in self.payoffs):
            raise ValueError(f"Expected {len(self.payoffs)} payoff tensors of one shape with one axis per player")

    @property
    def num_players(self) -> int:
        return len(self.payoffs)

    def num_actions(self, c: int) -> int:
        return self.payoffs[0].shape[c]

    def utilities(self, c: int, profile: np.ndarray) -> np.ndarray:
        index = tuple(slice(None) if i == c else int(a) for i, a in enumerate(profile))
        return self.payoffs[c][index]


class NetworkGame(FiniteGame):
    """
    CRC game on a deployment: U_c is the EE of group c when the other groups
    play their (believed) actions.
    """

    def __init__(self, depl: Deployment, spaces: List[ActionSpace], onoff_enabled: bool = True):
        self.depl = depl
        self.spaces = spaces
        self.onoff_enabled = onoff_enabled
        self._cache: Dict[tuple, np.ndarray] = {}
        self._static_power = [self._static_group_power(space) for space in spaces]

    @property
    def num_players(self) -> int:
        return len(self.spaces)

    def num_actions(self, c: int) -> int:
        return self.spaces[c].size

    def _static_group_power(self, space: ActionSpace) -> float:
        params = self.depl.params
        initial = self.depl.initial_assoc[space.group]
        tc = params.signaling_overhead * (space.assoc * (1.0 - initial)).sum(axis=1)
        active = space.assoc.sum(axis=1) > 0
        if not self.onoff_enabled:
            active = np.ones_like(active)
        return float(np.where(active, tc + params.circuit_active, params.circuit_sleep).sum())

    def external_interference(self, c: int, profile: np.ndarray) -> np.ndarray:
        """(K, N) power received from every group other than c under ``profile``."""
        depl = self.depl
        total = np.zeros((depl.num_users, depl.num_subchannels))
        for t, space in enumerate(self.spaces):
            if t == c or space.num_links == 0:
                continue
            action = int(profile[t])
            n = space.subchannels[action]
            on = n >= 0
            s = space.links[on, 0]
            power = space.powers[action][on]
            gains = depl.gains[space.group][s, :, n[on]]  # (links, K)
            np.add.at(total.T, n[on], power[:, None] * gains)
        return total

    def utilities(self, c: int, profile: np.ndarray) -> np.ndarray:
        key = (c,) + tuple(int(a) for i, a in enumerate(profile) if i != c)
        cached = self._cache.get(key)
        if cached is not None:
            return cached

        space = self.spaces[c]
        params = self.depl.params
        powers = space.powers  # (A, Lk)
        if space.num_links == 0:
            values = np.zeros(space.size)
        else:
            gains_c = self.depl.gains[space.group]
            s_idx, k_idx = space.links[:, 0], space.links[:, 1]
            n = space.subchannels
            on = n >= 0
            n_safe = np.where(on, n, 0)

            signal = powers * gains_c[s_idx[None, :], k_idx[None, :], n_safe]
            cross = gains_c[s_idx[None, None, :], k_idx[None, :, None], n_safe[:, :, None]]  # (A, j, j')
            same = (n[:, :, None] == n[:, None, :]) & on[:, None, :]
            same &= ~np.eye(space.num_links, dtype=bool)[None, :, :]
            intra = (same * powers[:, None, :] * cross).sum(axis=2)
            external = self.external_interference(c, profile)[k_idx[None, :], n_safe]

            sinr = signal / (intra + external + params.noise_floor)
            rates = np.where(on, params.subchannel_bandwidth * np.log2(1.0 + sinr), 0.0)
            values = rates.sum(axis=1) / (powers.sum(axis=1) + self._static_power[c])

        self._cache[key] = values
        return values


def regret_update(
    state: GameState,
    realized: Sequence[float],
    counterfactual: Sequence[np.ndarray],
) -> GameState:
    """
    Add one play: for each player, U(a_hat, A_-c) - U(A) is accumulated in the
    row of the action it played.
    """
    players = []
    for player, value, alternatives in zip(state.players, realized, counterfactual):
        numerators = player.numerators.copy()
        numerators[player.action] += np.asarray(alternatives, dtype=float) - value
        players.append(
            PlayerState(
                action=player.action,
                numerators=numerators,
                probabilities=player.probabilities,
                utility_total=player.utility_total + float(value),
            )
        )
    return GameState(players=players, iteration=state.iteration + 1)


def normalizer(regrets_row: np.ndarray, xi_factor: float = 2.0) -> float:
    return max(1.0, xi_factor * regrets_row.size * float(regrets_row.max(initial=0.0)))


def probability_update(
    player: PlayerState,
    iteration: int,
    xi: Optional[float] = None,
    xi_factor: float = 2.0,
) -> np.ndarray:
    """
    w(a_hat) = R(played, a_hat) / xi for a_hat != played and the remaining mass
    on the played action. An ``xi`` too small for a valid vector is replaced by
    the self-adjusting value.
    """
    row = player.regrets(iteration)[player.action].copy()
    row[player.action] = 0.0
    if xi is None or row.sum() / xi > 1.0:
        xi = normalizer(row, xi_factor)
    w = row / xi
    w[player.action] = 1.0 - w.sum()
    return w


def exchange_beliefs(
    vectors: Dict[int, np.ndarray],
    error_ratio: float,
    rng: Optional[np.random.Generator] = None,
    receiver: int = -1,
) -> ExchangedBeliefs:
    """Vectors as received: entries scaled by (1 + rho*dh), dh ~ N(0, 1), clamped and renormalized."""
    if error_ratio == 0:
        return ExchangedBeliefs(receiver=receiver, beliefs={t: np.array(w, copy=True) for t, w in vectors.items()})

    rng = rng or np.random.default_rng()
    beliefs = {}
    for t, w in vectors.items():
        w = np.asarray(w, dtype=float)
        noisy = np.maximum(w * (1.0 + error_ratio * rng.standard_normal(w.shape)), 0.0)
        total = noisy.sum()
        beliefs[t] = noisy / total if total > 0 else w.copy()
    return ExchangedBeliefs(receiver=receiver, beliefs=beliefs)


def select_action(w: np.ndarray, u: Optional[float] = None) -> int:
    """Argmax of w (lowest index on ties), or the inverse-CDF pick for a uniform draw u."""
    w = np.asarray(w, dtype=float)
    if u is None:
        return int(np.argmax(w))
    cumulative = np.cumsum(w) / w.sum()
    return int(min(np.searchsorted(cumulative, u, side="right"), w.size - 1))


def utility_converged(previous: np.ndarray, current: np.ndarray, threshold: float) -> bool:
    """|U_t+1 - U_t| / U_t <= threshold for every player; U_t = 0 only converges to 0."""
    for before, after in zip(previous, current):
        if before == 0:
            if after != 0:
                return False
        elif abs(after - before) / abs(before) > threshold:
            return False
    return True


def _initial_state(game: FiniteGame, profile: np.ndarray) -> GameState:
    players = []
    for c in range(game.num_players):
        size = game.num_actions(c)
        w = np.zeros(size)
        w[int(profile[c])] = 1.0
        players.append(PlayerState(action=int(profile[c]), numerators=np.zeros((size, size)), probabilities=w))
    return GameState(players=players)


def learn(
    game: FiniteGame,
    cfg: CrcConfig,
    initial_profile: Optional[Sequence[int]] = None,
    error_ratio: float = 0.0,
    round_index: int = 0,
    logger: Optional[SimulationLogger] = None,
) -> LearningOutcome:
    """
    Regret-matching loop shared by every game: evaluate, update regrets,
    update probabilities, exchange, select, until the watched utilities (realized
    or running average, per ``cfg.stop_rule``) change by at most ``conv_threshold``
    for ``stop_window`` consecutive iterations. ``trace`` holds the running averages.
    """
    C = game.num_players
    profile = np.zeros(C, dtype=int) if initial_profile is None else np.asarray(initial_profile, dtype=int)
    state = _initial_state(game, profile)
    beliefs = np.tile(profile, (C, 1))  # beliefs[c] = profile as seen by c
    play_counts: Counter = Counter()
    trace: List[np.ndarray] = []
    watched: List[np.ndarray] = []
    streak = 0
    converged = False

    while state.iteration < cfg.max_iters:
        counterfactual = [game.utilities(c, beliefs[c]) for c in range(C)]
        realized = [float(counterfactual[c][state.players[c].action]) for c in range(C)]
        play_counts[tuple(int(a) for a in state.profile)] += 1
        state = regret_update(state, realized, counterfactual)
        trace.append(np.array([p.average_utility(state.iteration) for p in state.players]))
        watched.append(np.array(realized) if cfg.stop_rule == StopRule.REALIZED else trace[-1])

        if len(watched) >= 2:
            streak = streak + 1 if utility_converged(watched[-2], watched[-1], cfg.conv_threshold) else 0
        if state.iteration >= cfg.min_iters and streak >= cfg.stop_window:
            converged = True
            break

        t = state.iteration
        draws: List[Optional[float]] = [None] * C
        for c, player in enumerate(state.players):
            player.probabilities = probability_update(player, t, xi_factor=cfg.xi_factor)
            if cfg.selection == SelectionRule.SAMPLE:
                draws[c] = float(derive_rng(cfg.rng_seed, _SELECTION_STREAM, round_index, c, t).random())
            player.action = select_action(player.probabilities, draws[c])

        for c in range(C):
            received = exchange_beliefs(
                {s: state.players[s].probabilities for s in range(C) if s != c},
                error_ratio,
                derive_rng(cfg.rng_seed, _EXCHANGE_STREAM, round_index, c, t),
                receiver=c,
            )
            beliefs[c, c] = state.players[c].action
            for sender, w in received.beliefs.items():
                beliefs[c, sender] = select_action(w, draws[sender])

        if logger and t % 100 == 0:
            logger.verbose("DEBUG", f"CRC iter {t}: max regret {state.max_regret():.4g}")

    return LearningOutcome(
        state=state,
        profile=state.profile,
        converged=converged,
        trace=np.array(trace).reshape(len(trace), C),
        play_counts=dict(play_counts),
    )


def run_regret_matching(
    payoffs: Sequence[np.ndarray],
    cfg: CrcConfig,
    initial_profile: Optional[Sequence[int]] = None,
    error_ratio: float = 0.0,
) -> LearningOutcome:
    """Regret matching on a fixed finite game given by per-player payoff tensors."""
    return learn(MatrixGame(payoffs), cfg, initial_profile, error_ratio)


class CrcEngine:
    """Builds the CSCs' action spaces from a network allocation and plays the CRC game."""

    def __init__(
        self,
        config: CrcConfig,
        logger: SimulationLogger = SimulationLogger("INFO", False),
    ):
        self.config = config
        self.logger = logger

    def build_spaces(
        self, depl: Deployment, allocation: Allocation, round_index: int = 0
    ) -> List[ActionSpace]:
        cfg = self.config
        return [
            build_action_space(
                depl.params,
                depl,
                allocation.assoc[c],
                c,
                incumbent=allocation,
                cap=cfg.action_cap,
                rng=derive_rng(cfg.rng_seed, _SAMPLING_STREAM, round_index, c),
                mutation_rate=cfg.mutation_rate,
            )
            for c in range(depl.num_groups)
        ]

    def run(
        self,
        depl: Deployment,
        allocation: Allocation,
        round_index: int = 0,
        onoff_enabled: bool = True,
    ) -> CrcResult:
        start = time.perf_counter()
        spaces = self.build_spaces(depl, allocation, round_index)
        game = NetworkGame(depl, spaces, onoff_enabled)
        sizes = [space.size for space in spaces]
        self.logger.debug(f"CRC round {round_index}: action spaces {sizes}")

        outcome = learn(
            game,
            self.config,
            initial_profile=[space.incumbent for space in spaces],
            error_ratio=depl.params.error_ratio,
            round_index=round_index,
            logger=self.logger,
        )
        actions = outcome.profile
        if not outcome.converged:
            actions = np.array(max(outcome.play_counts, key=outcome.play_counts.get), dtype=int)
            self.logger.verbose(
                "INFO",
                f"CRC round {round_index} hit the iteration cap ({self.config.max_iters}); "
                "using the most played profile",
            )

        final = joint_allocation(spaces, actions, depl)
        effective = final.effective_power
        believed = []
        for c in range(depl.num_groups):
            foreign = np.array(effective)
            foreign[c] = 0.0
            believed.append(foreign)

        self.logger.debug(
            f"CRC round {round_index}: {outcome.state.iteration} iterations, "
            f"max regret {outcome.state.max_regret():.4g}, converged={outcome.converged} "
            f"in {time.perf_counter() - start:.2f}s"
        )
        return CrcResult(
            actions=actions,
            action_spaces=spaces,
            allocation=final,
            power_bounds=effective.sum(axis=(1, 2)),
            believed_foreign_power=believed,
            converged=outcome.converged,
            iterations=outcome.state.iteration,
            max_regret=outcome.state.max_regret(),
            trace=outcome.trace,
            play_counts=outcome.play_counts,
        )


def run_crc(
    params: ScenarioParams,
    depl: Deployment,
    allocation: Allocation,
    cfg: CrcConfig,
    *,
    round_index: int = 0,
    onoff_enabled: bool = True,
    logger: Optional[SimulationLogger] = None,
) -> CrcResult:
    """Play the CRC game from the groups' current allocations; ``params`` supplies L and rho."""
    if params is not depl.params:
        depl = replace(depl, params=params)
    engine = CrcEngine(cfg, logger) if logger else CrcEngine(cfg)
    return engine.run(depl, allocation, round_index=round_index, onoff_enabled=onoff_enabled)


def utility(
    depl: Deployment,
    spaces: List[ActionSpace],
    joint_action: Sequence[int],
    c: int,
    onoff_enabled: bool = True,
) -> float:
    """EE of group c, in bit/J, under one action per CSC."""
    game = NetworkGame(depl, spaces, onoff_enabled)
    return float(game.utilities(c, np.asarray(joint_action, dtype=int))[int(joint_action[c])])
