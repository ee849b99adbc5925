"""
Per-group optimization problem solved by TURA.

Holds everything the fitness function needs for one localized C-RAN: the
member users, their gains from the group's RSCs, the interference they see
from other groups under the believed foreign powers, and the bounds of the
relaxed position vector [phi (S*Kc) | psi (S*Kc*N) | p (S*Kc*N)].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from ...fn_network_model.engine.radio_model import (
    foreign_interference,
    intra_group_interference,
    link_sinr,
    shannon_rate,
)
from ...fn_network_model.utils.DataStructures import Allocation, Deployment


class LinkMetrics(NamedTuple):
    effective: np.ndarray  # (S, Kc, N)
    served: np.ndarray  # (S, Kc, N) masked rates
    user_rate: np.ndarray  # (Kc,)
    rsc_rate: np.ndarray  # (S,)
    tx: np.ndarray  # (S,)
    subchannel_power: np.ndarray  # (N,)


@dataclass
class GroupProblem:
    depl: Deployment
    group: int
    foreign_power: Optional[np.ndarray] = None
    power_bounds: Optional[np.ndarray] = None
    pinned_assoc: bool = False
    onoff_enabled: bool = True
    fronthaul_limited: bool = True

    members: np.ndarray = field(init=False)
    gains: np.ndarray = field(init=False)
    external: np.ndarray = field(init=False)
    initial: np.ndarray = field(init=False)
    fronthaul_caps: np.ndarray = field(init=False)
    lower: np.ndarray = field(init=False)
    upper: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        depl, c = self.depl, self.group
        if not 0 <= c < depl.num_groups:
            raise ValueError(f"Group {c} out of range for {depl.num_groups} groups")
        self.members = depl.members(c)
        self.gains = depl.gains[c][:, self.members, :]
        self.initial = depl.initial_assoc[c][:, self.members]
        if self.foreign_power is None:
            self.foreign_power = np.zeros(depl.shape)
        else:
            self.foreign_power = np.asarray(self.foreign_power, dtype=float)
            if self.foreign_power.shape != depl.shape:
                raise ValueError(f"foreign_power shape {self.foreign_power.shape} != {depl.shape}")
        self.external = foreign_interference(depl.gains, self.foreign_power, c)[self.members]
        self.fronthaul_caps = depl.params.fronthaul_caps[c]
        if self.power_bounds is not None:
            self.power_bounds = np.asarray(self.power_bounds, dtype=float)
            if self.power_bounds.shape != (depl.num_subchannels,):
                raise ValueError(f"power_bounds must have shape ({depl.num_subchannels},)")

        S, Kc, N = self.gains.shape
        phi_lo, phi_hi = np.zeros(S * Kc), np.ones(S * Kc)
        if self.pinned_assoc:
            phi_lo = phi_hi = self.initial.reshape(-1).astype(float)
        size = S * Kc * N
        self.lower = np.concatenate([phi_lo, np.zeros(2 * size)])
        self.upper = np.concatenate([phi_hi, np.ones(size), np.full(size, depl.params.max_tx_power)])

    @property
    def num_rscs(self) -> int:
        return self.gains.shape[0]

    @property
    def num_members(self) -> int:
        return self.gains.shape[1]

    @property
    def num_subchannels(self) -> int:
        return self.gains.shape[2]

    @property
    def dimension(self) -> int:
        S, Kc, N = self.gains.shape
        return S * Kc + 2 * S * Kc * N

    def split(self, position: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Views of a position as phi (S, Kc), psi (S, Kc, N) and p (S, Kc, N)."""
        S, Kc, N = self.gains.shape
        position = np.asarray(position, dtype=float)
        if position.shape != (self.dimension,):
            raise ValueError(f"Position length {position.shape} != ({self.dimension},)")
        a, b = S * Kc, S * Kc + S * Kc * N
        return (
            position[:a].reshape(S, Kc),
            position[a:b].reshape(S, Kc, N),
            position[b:].reshape(S, Kc, N),
        )

    def join(self, phi: np.ndarray, psi: np.ndarray, p: np.ndarray) -> np.ndarray:
        return np.concatenate([np.ravel(phi), np.ravel(psi), np.ravel(p)])

    def link_metrics(self, phi: np.ndarray, psi: np.ndarray, p: np.ndarray) -> LinkMetrics:
        """Rates and powers of the group's links, for relaxed or binary variables."""
        params = self.depl.params
        mask = phi[:, :, None] * psi
        effective = mask * p
        field_kn = intra_group_interference(self.gains, effective) + self.external
        rates = shannon_rate(link_sinr(self.gains, p, field_kn, params.noise_floor), params.subchannel_bandwidth)
        served = mask * rates
        return LinkMetrics(
            effective=effective,
            served=served,
            user_rate=served.sum(axis=(0, 2)),
            rsc_rate=served.sum(axis=(1, 2)),
            tx=effective.sum(axis=(1, 2)),
            subchannel_power=effective.sum(axis=(0, 1)),
        )

    def to_allocation(self, phi: np.ndarray, psi: np.ndarray, p: np.ndarray) -> Allocation:
        """Network-wide allocation holding this group's slice, zeros elsewhere."""
        C, S, K, N = self.depl.shape
        assoc = np.zeros((S, K))
        subch = np.zeros((S, K, N))
        power = np.zeros((S, K, N))
        assoc[:, self.members] = phi
        subch[:, self.members, :] = psi
        power[:, self.members, :] = p
        return Allocation.empty(C, S, K, N).with_group(self.group, assoc, subch, power)
