"""
TURA Engine

Traffic-control-based user association and resource allocation for one
localized C-RAN, solved with quantum-behaved particle swarm optimization over
a relaxed encoding of association, subchannel assignment and power.

Features:
- Threshold/argmax decoding of relaxed positions into binary allocations
- Squared-hinge penalty over power, rate, fronthaul, structure and
  binariness constraints, plus optional per-subchannel power bounds
- Fitness = estimated group EE of the decoded allocation minus the penalty
- Mean-best attractor evolution with a linearly decreasing contraction
  coefficient and box clamping
- Gap-ratio convergence test with a guard for non-positive global best
- Per-(seed, group, round, iteration) random streams
"""

from __future__ import annotations

import time
from dataclasses import replace
from typing import Optional

import numpy as np

from ...fn_network_model.engine.radio_model import group_power
from ...fn_network_model.utils.DataStructures import Allocation, Deployment
from ...fn_network_model.config import ScenarioParams
from ...shared.logger import SimulationLogger
from ...shared.rng import derive_rng
from ..config import QpsoConfig
from ..utils.DataStructures import SwarmState, TuraResult
from .group_problem import GroupProblem

_DEFAULT_CONFIG = QpsoConfig()


def _hinge_sq(values: np.ndarray) -> float:
    return float(np.sum(np.maximum(0.0, values) ** 2))


def decode_variables(
    position: np.ndarray, problem: GroupProblem
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Binary phi, binary psi and masked p of a relaxed position (group slice)."""
    phi, psi, p = problem.split(position)
    S, Kc, N = psi.shape
    phi_hard = np.zeros((S, Kc))
    if Kc:
        best_rsc = np.argmax(phi, axis=0)
        chosen = phi[best_rsc, np.arange(Kc)] >= 0.5
        phi_hard[best_rsc[chosen], np.flatnonzero(chosen)] = 1.0

    psi_hard = np.zeros((S, Kc, N))
    if Kc:
        best_user = np.argmax(psi, axis=1)  # (S, N)
        s_idx, n_idx = np.indices((S, N))
        chosen = psi[s_idx, best_user, n_idx] >= 0.5
        psi_hard[s_idx[chosen], best_user[chosen], n_idx[chosen]] = 1.0

    p_hard = p * phi_hard[:, :, None] * psi_hard
    return phi_hard, psi_hard, p_hard


def decode(position: np.ndarray, problem: GroupProblem) -> Allocation:
    """Binary network allocation encoded by a relaxed position."""
    return problem.to_allocation(*decode_variables(position, problem))


def relaxation_residual(position: np.ndarray, problem: GroupProblem) -> float:
    """Binariness and structural multiplicity of the raw variables, the parts decoding repairs."""
    phi, psi, _ = problem.split(position)
    return (
        float(np.sum((phi**2 - phi) ** 2))
        + float(np.sum((psi**2 - psi) ** 2))
        + _hinge_sq(phi.sum(axis=0) - 1.0)
        + _hinge_sq(psi.sum(axis=1) - 1.0)
    )


def penalty(position: np.ndarray, problem: GroupProblem, cfg: QpsoConfig = _DEFAULT_CONFIG) -> float:
    """
    Squared-hinge penalty of a raw relaxed position.

    Power terms are measured in ``cfg.power_unit`` and rate terms in
    ``cfg.rate_unit``.
    """
    params = problem.depl.params
    phi, psi, p = problem.split(position)
    links = problem.link_metrics(phi, psi, p)

    total = _hinge_sq((links.tx - params.max_tx_power) / cfg.power_unit)
    total += _hinge_sq((params.min_rate - links.user_rate) / cfg.rate_unit)
    if problem.fronthaul_limited:
        total += _hinge_sq((links.rsc_rate - problem.fronthaul_caps) / cfg.rate_unit)
    total += _hinge_sq(phi.sum(axis=0) - 1.0)
    total += _hinge_sq(psi.sum(axis=1) - 1.0)
    total += float(np.sum((phi**2 - phi) ** 2))
    total += float(np.sum((psi**2 - psi) ** 2))
    total += _hinge_sq(-p / cfg.power_unit)
    if problem.power_bounds is not None:
        total += _hinge_sq((links.subchannel_power - problem.power_bounds) / cfg.power_unit)
    return total


def estimated_ee(position: np.ndarray, problem: GroupProblem) -> float:
    """Estimated group EE (bit/J) of the decoded position."""
    phi, psi, p = decode_variables(position, problem)
    links = problem.link_metrics(phi, psi, p)
    tx, tc, circuit, active = group_power(
        problem.depl.params, phi, links.effective, problem.initial, problem.onoff_enabled
    )
    total_power = float(np.where(active, tx + tc + circuit, circuit).sum())
    return float(links.served.sum()) / total_power


def combine_fitness(reward: float, penalty_value: float, penalty_factor: float) -> float:
    return reward - penalty_factor * penalty_value


def fitness(position: np.ndarray, problem: GroupProblem, cfg: QpsoConfig = _DEFAULT_CONFIG) -> float:
    reward = estimated_ee(position, problem) / cfg.objective_unit
    return combine_fitness(reward, penalty(position, problem, cfg), cfg.penalty_factor)


def beta(t: int, cfg: QpsoConfig) -> float:
    """Contraction coefficient, affine from beta_max at t = 0 to beta_min at t = T."""
    return (cfg.beta_max - cfg.beta_min) * (cfg.max_iters - t) / cfg.max_iters + cfg.beta_min


def gap_ratios(state: SwarmState) -> np.ndarray:
    return np.abs(state.hist_best_fitness - state.global_best_fitness) / state.global_best_fitness


def has_converged(state: SwarmState, cfg: QpsoConfig) -> bool:
    if state.global_best_fitness <= 0:
        return False
    return bool(np.all(gap_ratios(state) <= cfg.conv_threshold))


def warm_start_position(problem: GroupProblem) -> np.ndarray:
    """Max-RSRP association with subchannels dealt round-robin per RSC at P_max/N each."""
    S, Kc, N = problem.gains.shape
    phi = problem.initial.astype(float)
    psi = np.zeros((S, Kc, N))
    p = np.zeros((S, Kc, N))
    for s in range(S):
        served = np.flatnonzero(phi[s] > 0.5)
        if served.size == 0:
            continue
        for n in range(N):
            k = served[n % served.size]
            psi[s, k, n] = 1.0
            p[s, k, n] = problem.depl.params.max_tx_power / N
    return problem.join(phi, psi, p)


def _swarm_from_positions(
    positions: np.ndarray, fitness_values: np.ndarray, iteration: int
) -> SwarmState:
    best = int(np.argmax(fitness_values))
    return SwarmState(
        positions=positions,
        fitness=fitness_values,
        hist_best=positions.copy(),
        hist_best_fitness=fitness_values.copy(),
        global_best=positions[best].copy(),
        global_best_fitness=float(fitness_values[best]),
        iteration=iteration,
    )


def initialize_swarm(
    problem: GroupProblem,
    cfg: QpsoConfig,
    rng: Optional[np.random.Generator] = None,
) -> SwarmState:
    rng = rng or derive_rng(cfg.rng_seed, problem.group, 0, 0)
    span = problem.upper - problem.lower
    positions = problem.lower + rng.random((cfg.swarm_size, problem.dimension)) * span
    if cfg.warm_start:
        positions[0] = np.clip(warm_start_position(problem), problem.lower, problem.upper)
    fitness_values = np.array([fitness(x, problem, cfg) for x in positions])
    return _swarm_from_positions(positions, fitness_values, iteration=0)


def evolve(
    state: SwarmState,
    cfg: QpsoConfig,
    problem: GroupProblem,
    rng: Optional[np.random.Generator] = None,
) -> SwarmState:
    """
    One QPSO iteration: attractor sampling around the mean best, clamping and
    best-so-far bookkeeping.
    """
    if state.iteration >= cfg.max_iters:
        raise ValueError(f"Swarm already at iteration {state.iteration} of {cfg.max_iters}")
    rng = rng or derive_rng(cfg.rng_seed, problem.group, 0, state.iteration + 1)
    shape = state.positions.shape

    lam = rng.random(shape)
    mu = 1.0 - rng.random(shape)  # (0, 1]
    eps = rng.random(shape)

    attractor = lam * state.hist_best + (1.0 - lam) * state.global_best
    spread = beta(state.iteration, cfg) * np.abs(state.mean_best - state.positions) * np.log(1.0 / mu)
    positions = np.where(eps > 0.5, attractor + spread, attractor - spread)
    positions = np.clip(positions, problem.lower, problem.upper)

    fitness_values = np.array([fitness(x, problem, cfg) for x in positions])
    improved = fitness_values > state.hist_best_fitness
    hist_best = np.where(improved[:, None], positions, state.hist_best)
    hist_best_fitness = np.where(improved, fitness_values, state.hist_best_fitness)

    global_best, global_best_fitness = state.global_best, state.global_best_fitness
    best = int(np.argmax(hist_best_fitness))
    if hist_best_fitness[best] > global_best_fitness:
        global_best, global_best_fitness = hist_best[best].copy(), float(hist_best_fitness[best])

    return SwarmState(
        positions=positions,
        fitness=fitness_values,
        hist_best=hist_best,
        hist_best_fitness=hist_best_fitness,
        global_best=global_best,
        global_best_fitness=global_best_fitness,
        iteration=state.iteration + 1,
    )


def enforce_power_budget(allocation: Allocation, max_tx_power: float) -> Allocation:
    """Scale every RSC whose radiated power exceeds max_tx_power back onto the budget."""
    tx = allocation.effective_power.sum(axis=(2, 3))
    scale = np.where(tx > max_tx_power, max_tx_power / np.where(tx > 0, tx, 1.0), 1.0)
    return Allocation(allocation.assoc, allocation.subch, allocation.power * scale[:, :, None, None])


class TuraEngine:
    """Runs QPSO on one group problem."""

    def __init__(
        self,
        config: QpsoConfig,
        logger: SimulationLogger = SimulationLogger("INFO", False),
    ):
        self.config = config
        self.logger = logger

    def run(self, problem: GroupProblem, round_index: int = 0) -> TuraResult:
        cfg = self.config
        c = problem.group
        start = time.perf_counter()

        if problem.num_members == 0:
            empty = problem.to_allocation(*problem.split(np.zeros(problem.dimension)))
            self.logger.verbose("DEBUG", f"TURA group {c}: no member users, RSCs stay asleep")
            return TuraResult(
                group=c,
                allocation=empty,
                best_position=np.zeros(0),
                best_fitness=0.0,
                estimated_ee=0.0,
                converged=True,
                iterations=0,
                trace=[0.0],
            )

        state = initialize_swarm(problem, cfg, derive_rng(cfg.rng_seed, c, round_index, 0))
        trace = [state.global_best_fitness]
        converged = False
        while state.iteration < cfg.max_iters:
            state = evolve(state, cfg, problem, derive_rng(cfg.rng_seed, c, round_index, state.iteration + 1))
            trace.append(state.global_best_fitness)
            if has_converged(state, cfg):
                converged = True
                break
            if state.iteration % 50 == 0:
                self.logger.verbose(
                    "DEBUG", f"TURA group {c} iter {state.iteration}: best fitness {state.global_best_fitness:.6g}"
                )

        allocation = decode(state.global_best, problem)
        if cfg.repair_power_budget:
            allocation = enforce_power_budget(allocation, problem.depl.params.max_tx_power)
        ee = estimated_ee(state.global_best, problem)
        if not converged:
            self.logger.verbose("INFO", f"TURA group {c} hit the iteration cap ({cfg.max_iters}) before converging")
        self.logger.debug(
            f"TURA group {c} round {round_index}: {state.iteration} iterations, "
            f"fitness {state.global_best_fitness:.6g}, estimated EE {ee:.6g} bit/J "
            f"in {time.perf_counter() - start:.2f}s"
        )
        return TuraResult(
            group=c,
            allocation=allocation,
            best_position=state.global_best,
            best_fitness=state.global_best_fitness,
            estimated_ee=ee,
            converged=converged,
            iterations=state.iteration,
            trace=trace,
        )


def run_tura(
    params: ScenarioParams,
    depl: Deployment,
    cfg: QpsoConfig,
    foreign_power: Optional[np.ndarray] = None,
    power_bounds: Optional[np.ndarray] = None,
    *,
    group: int = 0,
    round_index: int = 0,
    pinned_assoc: bool = False,
    onoff_enabled: bool = True,
    fronthaul_limited: bool = True,
    logger: Optional[SimulationLogger] = None,
) -> TuraResult:
    """Solve one group's allocation; ``params`` replaces the deployment's scenario limits."""
    if params is not depl.params:
        depl = replace(depl, params=params)
    problem = GroupProblem(
        depl=depl,
        group=group,
        foreign_power=foreign_power,
        power_bounds=power_bounds,
        pinned_assoc=pinned_assoc,
        onoff_enabled=onoff_enabled,
        fronthaul_limited=fronthaul_limited,
    )
    engine = TuraEngine(cfg, logger) if logger else TuraEngine(cfg)
    return engine.run(problem, round_index=round_index)
