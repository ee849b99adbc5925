"""
Exhaustive Oracle

Brute-force ground truth for tiny instances. Every association of users to
RSCs (or none) is combined with every per-(RSC, subchannel) choice of "idle"
or "serve one associated user at level l" and the best feasible network EE is
kept. Also verifies correlated-equilibrium inequalities of small games.

Features:
- Exact count of the search space before enumeration, refusing above budget
- RSC power budget checked before the full constraint evaluation
- Optional threads over the association loop, merged by max
- Projection of continuous allocations onto the oracle's power grid
"""

from __future__ import annotations

import itertools
import math
from dataclasses import replace
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ...fn_network_model.config import ScenarioParams
from ...fn_network_model.engine.radio_model import check_constraints, group_ee
from ...fn_network_model.utils.DataStructures import Allocation, Deployment
from ...shared.errors import OracleRefusal
from ...shared.logger import SimulationLogger
from ..config import OracleLimits
from ..utils.DataStructures import OracleResult


def _associations(num_rscs: int, num_users: int) -> Iterator[Tuple[int, ...]]:
    """Serving RSC (flat index) per user, -1 for unassociated."""
    return itertools.product(range(-1, num_rscs), repeat=num_users)


def _served_counts(serving: Sequence[int], num_rscs: int) -> np.ndarray:
    counts = np.zeros(num_rscs, dtype=int)
    for r in serving:
        if r >= 0:
            counts[r] += 1
    return counts


def enumeration_size(num_rscs: int, num_users: int, num_subchannels: int, levels: int) -> int:
    """Number of candidate allocations: sum over associations of prod_r (1 + m_r*L)^N."""
    if (num_rscs + 1) ** num_users > 10**8:
        return (num_rscs + 1) ** num_users
    total = 0
    for serving in _associations(num_rscs, num_users):
        counts = _served_counts(serving, num_rscs)
        total += math.prod(int(1 + m * levels) ** num_subchannels for m in counts)
    return total


def project_to_grid(params: ScenarioParams, allocation: Allocation, levels: Optional[int] = None) -> Allocation:
    """
    Snap every assigned link's power to the nearest level l*P_max/L (l >= 1),
    lowering the largest levels of an RSC until its budget holds.
    """
    L = levels or params.power_levels
    step = params.max_tx_power / L
    mask = (allocation.assoc[..., None] * allocation.subch > 0.5) & (allocation.power > 0)
    level = np.where(mask, np.clip(np.rint(allocation.power / step), 1, L), 0).astype(int)

    C, S = level.shape[:2]
    for c in range(C):
        for s in range(S):
            while level[c, s].sum() > L:
                flat = np.argmax(level[c, s])
                level[c, s].flat[flat] -= 1
    subch = np.where(level > 0, allocation.subch, 0.0)
    return Allocation(allocation.assoc, subch, level * step)


def _network_ee(depl: Deployment, alloc: Allocation, onoff_enabled: bool) -> float:
    return sum(group_ee(depl, alloc, c, onoff_enabled=onoff_enabled) for c in range(depl.num_groups))


def _search_association(
    depl: Deployment,
    serving: Tuple[int, ...],
    L: int,
    limits: OracleLimits,
) -> Tuple[Optional[Allocation], float, int]:
    params = depl.params
    C, S, K, N = depl.shape
    R = C * S
    step = params.max_tx_power / L

    assoc = np.zeros((R, K))
    for k, r in enumerate(serving):
        if r >= 0:
            assoc[r, k] = 1.0
    served_by = [np.flatnonzero(assoc[r]) for r in range(R)]
    # choice per (r, n): None or (user, level)
    per_cell = [
        [None] + [(int(k), level) for k in served_by[r] for level in range(1, L + 1)]
        for r in range(R)
        for _ in range(N)
    ]

    best: Optional[Allocation] = None
    best_ee = -math.inf
    evaluated = 0
    for combo in itertools.product(*per_cell):
        evaluated += 1
        levels_per_rsc = np.zeros(R, dtype=int)
        for index, choice in enumerate(combo):
            if choice is not None:
                levels_per_rsc[index // N] += choice[1]
        if np.any(levels_per_rsc > L):
            continue

        subch = np.zeros((R, K, N))
        power = np.zeros((R, K, N))
        for index, choice in enumerate(combo):
            if choice is None:
                continue
            r, n = divmod(index, N)
            k, level = choice
            subch[r, k, n] = 1.0
            power[r, k, n] = level * step
        alloc = Allocation(assoc.reshape(C, S, K), subch.reshape(C, S, K, N), power.reshape(C, S, K, N))
        report = check_constraints(params, depl, alloc, fronthaul_limited=limits.fronthaul_limited)
        if not report.feasible:
            continue
        ee = _network_ee(depl, alloc, limits.onoff_enabled)
        if ee > best_ee:
            best, best_ee = alloc, ee
    return best, best_ee, evaluated


def oracle_optimum(
    params: ScenarioParams,
    depl: Deployment,
    limits: OracleLimits = OracleLimits(),
    logger: Optional[SimulationLogger] = None,
) -> OracleResult:
    """
    Exact maximizer of the network EE over the discrete grid, honoring every
    constraint.

    Raises:
        OracleRefusal: the search space exceeds ``limits.max_enumeration``
    """
    if params is not depl.params:
        depl = replace(depl, params=params)
    C, S, K, N = depl.shape
    L = limits.power_levels or params.power_levels
    size = enumeration_size(C * S, K, N, L)
    if size > limits.max_enumeration:
        raise OracleRefusal(
            f"Oracle needs {size} candidate allocations, budget is {limits.max_enumeration}"
        )
    if logger:
        logger.debug(f"Oracle enumerating {size} candidate allocations (C={C}, S={S}, K={K}, N={N}, L={L})")

    associations = list(_associations(C * S, K))
    if limits.max_workers > 1:
        with ThreadPoolExecutor(max_workers=limits.max_workers) as executor:
            results: List[Tuple[Optional[Allocation], float, int]] = list(
                executor.map(lambda serving: _search_association(depl, serving, L, limits), associations)
            )
    else:
        results = [_search_association(depl, serving, L, limits) for serving in associations]

    best, best_ee, evaluated = None, -math.inf, 0
    for alloc, ee, count in results:  # association order keeps ties deterministic
        evaluated += count
        if alloc is not None and ee > best_ee:
            best, best_ee = alloc, ee

    if best is None:
        if logger:
            logger.info(f"Oracle: no feasible allocation among {evaluated} candidates")
        return OracleResult(allocation=None, ee=0.0, feasible=False, evaluated=evaluated, enumeration_size=size)
    return OracleResult(allocation=best, ee=best_ee, feasible=True, evaluated=evaluated, enumeration_size=size)


def ce_gains(payoffs: Sequence[np.ndarray], distribution: np.ndarray) -> List[np.ndarray]:
    """
    Per player c, the (A_c, A_c) matrix of expected payoff kept by playing a
    instead of deviating to a_tilde, weighted by the joint distribution.
    """
    distribution = np.asarray(distribution, dtype=float)
    gains = []
    for c, payoff in enumerate(payoffs):
        P = np.moveaxis(distribution, c, 0).reshape(distribution.shape[c], -1)
        U = np.moveaxis(np.asarray(payoff, dtype=float), c, 0).reshape(distribution.shape[c], -1)
        kept = (P * U).sum(axis=1)
        deviated = P @ U.T  # [a, a_tilde] = sum_rest P(a, rest) U(a_tilde, rest)
        gains.append(kept[:, None] - deviated)
    return gains


def verify_ce(payoffs: Sequence[np.ndarray], distribution: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff no player gains more than ``tol`` by any conditional deviation."""
    return all(bool(np.all(gain >= -tol)) for gain in ce_gains(payoffs, distribution))
