"""
Radio and Power Model

Downlink OFDMA model of a network split into localized C-RAN groups: the
interference seen by every user on every subchannel, SINR and Shannon rates,
per-RSC power composition with sleep mode and offloading overhead, group and
network energy efficiency, and constraint evaluation.

Features:
- Exact interference from every transmitter, or estimated interference where
  other groups' powers come from believed (foreign) power tensors
- Tensor-level functions reused by the solvers, scalar functions per link
- Power model with active/sleep circuit power and signaling overhead
- Constraint report with one violation magnitude per constraint
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from ..config import ScenarioParams
from ..utils.DataStructures import (
    Allocation,
    ConstraintReport,
    Deployment,
    InterferenceMode,
    PowerBreakdown,
)

Target = Tuple[int, int, int, int]


def intra_group_interference(gains_c: np.ndarray, effective_c: np.ndarray) -> np.ndarray:
    """
    Interference generated inside one group.

    Args:
        gains_c: (S, K, N) gains from the group's RSCs to the users
        effective_c: (S, K, N) radiated power of the group's links

    Returns:
        (K, N) power received by user k on n from the group's transmissions
        intended for other users
    """
    per_rsc = effective_c.sum(axis=1, keepdims=True)
    return ((per_rsc - effective_c) * gains_c).sum(axis=0)


def foreign_interference(gains: np.ndarray, effective: np.ndarray, c: int) -> np.ndarray:
    """(K, N) interference at every user from all groups other than c."""
    total = np.zeros(gains.shape[2:])
    for t in range(gains.shape[0]):
        if t != c:
            total += intra_group_interference(gains[t], effective[t])
    return total


def _source_power(
    alloc: Allocation, c: int, mode: InterferenceMode, foreign_power: Optional[np.ndarray]
) -> np.ndarray:
    effective = alloc.effective_power
    if InterferenceMode(mode) == InterferenceMode.EXACT:
        return effective
    if foreign_power is None:
        raise ValueError("Estimated interference requires foreign_power")
    foreign_power = np.asarray(foreign_power, dtype=float)
    if foreign_power.shape != effective.shape:
        raise ValueError(f"foreign_power shape {foreign_power.shape} != allocation shape {effective.shape}")
    source = np.array(foreign_power)
    source[c] = effective[c]
    return source


def interference_field(
    depl: Deployment,
    alloc: Allocation,
    c: int,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> np.ndarray:
    """(K, N) interference seen by users when group c's links are evaluated."""
    source = _source_power(alloc, c, mode, foreign_power)
    return intra_group_interference(depl.gains[c], source[c]) + foreign_interference(depl.gains, source, c)


def interference(
    depl: Deployment,
    alloc: Allocation,
    target: Target,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> float:
    c, _, k, n = target
    return float(interference_field(depl, alloc, c, mode, foreign_power)[k, n])


def link_sinr(
    gains_c: np.ndarray, power_c: np.ndarray, interference_kn: np.ndarray, noise_floor: float
) -> np.ndarray:
    return power_c * gains_c / (interference_kn[None, :, :] + noise_floor)


def shannon_rate(sinr_value: np.ndarray | float, bandwidth: float) -> np.ndarray:
    return bandwidth * np.log2(1.0 + np.asarray(sinr_value))


def sinr_field(
    depl: Deployment,
    alloc: Allocation,
    c: int,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> np.ndarray:
    """(S, K, N) SINR of every link of group c."""
    field = interference_field(depl, alloc, c, mode, foreign_power)
    return link_sinr(depl.gains[c], alloc.power[c], field, depl.params.noise_floor)


def sinr(
    depl: Deployment,
    alloc: Allocation,
    target: Target,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> float:
    c, s, k, n = target
    return float(sinr_field(depl, alloc, c, mode, foreign_power)[s, k, n])


def rate_field(
    depl: Deployment,
    alloc: Allocation,
    c: int,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> np.ndarray:
    return shannon_rate(sinr_field(depl, alloc, c, mode, foreign_power), depl.params.subchannel_bandwidth)


def rate(
    depl: Deployment,
    alloc: Allocation,
    target: Target,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> float:
    c, s, k, n = target
    return float(rate_field(depl, alloc, c, mode, foreign_power)[s, k, n])


def served_rates(
    depl: Deployment,
    alloc: Allocation,
    c: int,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> np.ndarray:
    """(S, K, N) rates masked by association and subchannel assignment."""
    mask = alloc.assoc[c][:, :, None] * alloc.subch[c]
    return mask * rate_field(depl, alloc, c, mode, foreign_power)


def group_rate(
    depl: Deployment,
    alloc: Allocation,
    c: int,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> float:
    return float(served_rates(depl, alloc, c, mode, foreign_power).sum())


def user_rates(
    depl: Deployment,
    alloc: Allocation,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> np.ndarray:
    """(K,) delivered rate of every user summed over all groups."""
    total = np.zeros(depl.num_users)
    for c in range(depl.num_groups):
        total += served_rates(depl, alloc, c, mode, foreign_power).sum(axis=(0, 2))
    return total


def rsc_rates(
    depl: Deployment,
    alloc: Allocation,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
) -> np.ndarray:
    """(C, S) sum rate carried over each RSC's fronthaul."""
    return np.stack(
        [served_rates(depl, alloc, c, mode, foreign_power).sum(axis=(1, 2)) for c in range(depl.num_groups)]
    )


def group_power(
    params: ScenarioParams,
    assoc_c: np.ndarray,
    effective_c: np.ndarray,
    initial_c: np.ndarray,
    onoff_enabled: bool = True,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Power composition of one group's RSCs.

    Returns:
        tx, tc_overhead, circuit, active, each (S,)
    """
    tx = effective_c.sum(axis=(1, 2))
    moved = assoc_c * (1.0 - initial_c)
    tc = params.signaling_overhead * moved.sum(axis=1)
    active = assoc_c.sum(axis=1) > 0
    if not onoff_enabled:
        active = np.ones_like(active)
    circuit = np.where(active, params.circuit_active, params.circuit_sleep)
    return tx, tc, circuit, active


def power_breakdown(
    params: ScenarioParams,
    alloc: Allocation,
    initial_assoc: np.ndarray,
    onoff_enabled: bool = True,
) -> PowerBreakdown:
    effective = alloc.effective_power
    parts = [
        group_power(params, alloc.assoc[c], effective[c], initial_assoc[c], onoff_enabled)
        for c in range(alloc.assoc.shape[0])
    ]
    tx, tc, circuit, active = (np.stack(arrays) for arrays in zip(*parts))
    per_rsc = np.where(active, tx + tc + circuit, circuit)
    return PowerBreakdown(tx=tx, tc_overhead=tc, circuit=circuit, active=active, total_group=per_rsc.sum(axis=1))


def group_ee(
    depl: Deployment,
    alloc: Allocation,
    c: int,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
    onoff_enabled: bool = True,
) -> float:
    """Energy efficiency of group c in bit/J."""
    tx, tc, circuit, active = group_power(
        depl.params, alloc.assoc[c], alloc.effective_power[c], depl.initial_assoc[c], onoff_enabled
    )
    total = float(np.where(active, tx + tc + circuit, circuit).sum())
    return group_rate(depl, alloc, c, mode, foreign_power) / total


def network_ee(depl: Deployment, alloc: Allocation, onoff_enabled: bool = True) -> float:
    """Sum of exact group EEs."""
    return sum(group_ee(depl, alloc, c, onoff_enabled=onoff_enabled) for c in range(depl.num_groups))


def aggregate_ee(depl: Deployment, alloc: Allocation, onoff_enabled: bool = True) -> float:
    """Total exact delivered rate over total consumed power, in bit/J."""
    total_rate = float(user_rates(depl, alloc).sum())
    total_power = power_breakdown(depl.params, alloc, depl.initial_assoc, onoff_enabled).total
    return total_rate / total_power


def _scope_to_group(values: np.ndarray, c: int) -> np.ndarray:
    """Copy of a (C, ...) violation array with every group but c zeroed."""
    scoped = np.zeros_like(values)
    scoped[c] = values[c]
    return scoped


def check_constraints(
    params: ScenarioParams,
    depl: Deployment,
    alloc: Allocation,
    power_bounds: Optional[np.ndarray] = None,
    *,
    mode: InterferenceMode = InterferenceMode.EXACT,
    foreign_power: Optional[np.ndarray] = None,
    fronthaul_limited: bool = True,
    group: Optional[int] = None,
) -> ConstraintReport:
    """
    Evaluate every allocation constraint.

    Args:
        params: scenario constants (limits)
        depl: deployment
        alloc: allocation to check
        power_bounds: optional (C, N) per-subchannel group power bounds
        mode: interference mode used for the rate constraints
        foreign_power: believed powers for estimated mode
        fronthaul_limited: whether B_max applies
        group: restrict the report to group c's RSCs and member users, the
            scope of one TURA subproblem

    Returns:
        ConstraintReport
    """
    effective = alloc.effective_power
    tx = effective.sum(axis=(2, 3))
    rates = user_rates(depl, alloc, mode, foreign_power)
    fronthaul = np.zeros(tx.shape)
    if fronthaul_limited:
        fronthaul = np.maximum(0.0, rsc_rates(depl, alloc, mode, foreign_power) - params.fronthaul_caps)
    bounds = None
    if power_bounds is not None:
        bounds = np.maximum(0.0, effective.sum(axis=(1, 2)) - np.asarray(power_bounds, dtype=float))
    report = ConstraintReport(
        tx_power=np.maximum(0.0, tx - params.max_tx_power),
        min_rate=np.maximum(0.0, params.min_rate - rates),
        fronthaul=fronthaul,
        association=np.maximum(0.0, alloc.assoc.sum(axis=1) - 1.0),
        subchannel_exclusivity=np.maximum(0.0, alloc.subch.sum(axis=2) - 1.0),
        assoc_binariness=np.abs(alloc.assoc**2 - alloc.assoc),
        subch_binariness=np.abs(alloc.subch**2 - alloc.subch),
        negativity=np.maximum(0.0, -alloc.power),
        power_bounds=bounds,
    )
    if group is None:
        return report
    if not 0 <= group < depl.num_groups:
        raise ValueError(f"Group {group} out of range for {depl.num_groups} groups")
    min_rate = np.zeros_like(report.min_rate)
    min_rate[depl.members(group)] = report.min_rate[depl.members(group)]
    return ConstraintReport(
        tx_power=_scope_to_group(report.tx_power, group),
        min_rate=min_rate,
        fronthaul=_scope_to_group(report.fronthaul, group),
        association=_scope_to_group(report.association, group),
        subchannel_exclusivity=_scope_to_group(report.subchannel_exclusivity, group),
        assoc_binariness=_scope_to_group(report.assoc_binariness, group),
        subch_binariness=_scope_to_group(report.subch_binariness, group),
        negativity=_scope_to_group(report.negativity, group),
        power_bounds=None if bounds is None else _scope_to_group(bounds, group),
    )
