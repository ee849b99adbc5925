"""
Building blocks shared by the mode handlers: per-group TURA passes, the
max-RSRP starting plan, exact-mode solution assembly and drop metrics.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...fn_network_model.config import ScenarioParams
from ...fn_network_model.engine.deployment import centralize
from ...fn_network_model.engine.radio_model import aggregate_ee, group_ee, user_rates
from ...fn_network_model.utils.DataStructures import Allocation, Deployment
from ...fn_tura.config import QpsoConfig
from ...fn_tura.engine.group_problem import GroupProblem
from ...fn_tura.engine.qpso_engine import TuraEngine, decode, warm_start_position
from ...fn_tura.utils.DataStructures import TuraResult
from ..config import SolverMode
from ..utils.DataStructures import NetworkSolution, SolutionMetrics


def solve_groups(
    engine: TuraEngine,
    depl: Deployment,
    round_index: int = 0,
    power_bounds: Optional[np.ndarray] = None,
    foreign_powers: Optional[Sequence[Optional[np.ndarray]]] = None,
    *,
    pinned_assoc: bool = False,
    onoff_enabled: bool = True,
    fronthaul_limited: bool = True,
    max_workers: int = 1,
) -> Tuple[List[TuraResult], Allocation]:
    """Run TURA on every group and merge the group slices into one allocation."""
    C = depl.num_groups

    def solve(c: int) -> TuraResult:
        problem = GroupProblem(
            depl=depl,
            group=c,
            foreign_power=None if foreign_powers is None else foreign_powers[c],
            power_bounds=None if power_bounds is None else power_bounds[c],
            pinned_assoc=pinned_assoc,
            onoff_enabled=onoff_enabled,
            fronthaul_limited=fronthaul_limited,
        )
        return engine.run(problem, round_index=round_index)

    if max_workers > 1 and C > 1:
        with ThreadPoolExecutor(max_workers=min(max_workers, C)) as executor:
            results = list(executor.map(solve, range(C)))
    else:
        results = [solve(c) for c in range(C)]

    allocation = Allocation.for_deployment(depl)
    for result in results:
        allocation = allocation.with_group(result.group, *result.allocation.group(result.group))
    return results, allocation


def rsrp_allocation(depl: Deployment) -> Allocation:
    """Max-RSRP association with subchannels dealt round-robin at P_max/N, for every group."""
    allocation = Allocation.for_deployment(depl)
    for c in range(depl.num_groups):
        problem = GroupProblem(depl=depl, group=c)
        plan = decode(warm_start_position(problem), problem)
        allocation = allocation.with_group(c, *plan.group(c))
    return allocation


def unconstrained_bounds(depl: Deployment) -> np.ndarray:
    return np.full((depl.num_groups, depl.num_subchannels), depl.params.max_tx_power)


def build_solution(
    mode: SolverMode,
    depl: Deployment,
    allocation: Allocation,
    *,
    power_bounds: Optional[np.ndarray] = None,
    converged: bool = True,
    iterations: int = 0,
    onoff_enabled: bool = True,
    outer_trace: Optional[List[float]] = None,
    traces: Optional[Dict[str, List[float]]] = None,
) -> NetworkSolution:
    group_values = np.array(
        [group_ee(depl, allocation, c, onoff_enabled=onoff_enabled) for c in range(depl.num_groups)]
    )
    return NetworkSolution(
        mode=mode,
        deployment=depl,
        allocation=allocation,
        power_bounds=unconstrained_bounds(depl) if power_bounds is None else power_bounds,
        group_ee=group_values,
        network_ee=float(group_values.sum()),
        aggregate_ee=aggregate_ee(depl, allocation, onoff_enabled),
        converged=converged,
        iterations=iterations,
        onoff_enabled=onoff_enabled,
        outer_trace=outer_trace or [],
        traces=traces or {},
    )


def network_metrics(params: ScenarioParams, depl: Deployment, sol: NetworkSolution) -> SolutionMetrics:
    """
    Exact-mode EE (total rate over total power), the share of users below
    R_min and the share served by an RSC other than their max-RSRP one.
    """
    if sol.allocation.shape != depl.shape:
        depl = centralize(depl)
    rates = user_rates(depl, sol.allocation)
    serving = sol.allocation.serving_rsc()
    offloaded = (serving >= 0) & (serving != depl.initial_rsc)
    return SolutionMetrics(
        ee_bits_per_joule=aggregate_ee(depl, sol.allocation, sol.onoff_enabled),
        outage_prob=float(np.mean(rates < params.min_rate)),
        offload_prob=float(np.mean(offloaded)),
        iterations=sol.iterations,
    )
