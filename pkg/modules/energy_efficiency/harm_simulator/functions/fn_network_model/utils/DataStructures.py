from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from ..config import ScenarioParams


class InterferenceMode(str, Enum):
    """
    Which powers feed the inter-group interference term.
    """

    EXACT = "exact"  # true powers of every group
    ESTIMATED = "estimated"  # believed powers (foreign_power) for the other groups


def _frozen(array: np.ndarray, dtype=float) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Deployment:
    """
    One Monte Carlo drop: geometry and frozen channel gains.

    Arrays are indexed by group c, RSC s within the group, user k and
    subchannel n. They are read-only so a deployment can be shared between
    concurrent workers.
    """

    params: ScenarioParams
    rsc_pos: np.ndarray  # (C, S, 2) metres
    user_pos: np.ndarray  # (K, 2) metres
    distances: np.ndarray  # (C, S, K) metres
    walls: np.ndarray  # (C, S, K) walls crossed per link
    line_of_sight: np.ndarray  # (C, S, K) bool
    pathloss_db: np.ndarray  # (C, S, K)
    gains: np.ndarray  # (C, S, K, N) linear power gain
    initial_assoc: np.ndarray  # (C, S, K) binary, max-RSRP

    def __post_init__(self) -> None:
        for name in ("rsc_pos", "user_pos", "distances", "pathloss_db", "gains", "initial_assoc"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        object.__setattr__(self, "walls", _frozen(self.walls, dtype=int))
        object.__setattr__(self, "line_of_sight", _frozen(self.line_of_sight, dtype=bool))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.gains.shape  # type: ignore[return-value]

    @property
    def num_groups(self) -> int:
        return self.gains.shape[0]

    @property
    def num_rscs_per_group(self) -> int:
        return self.gains.shape[1]

    @property
    def num_users(self) -> int:
        return self.gains.shape[2]

    @property
    def num_subchannels(self) -> int:
        return self.gains.shape[3]

    @property
    def group_of_rsc(self) -> np.ndarray:
        """Group index of every RSC, flattened in (c, s) order."""
        return np.repeat(np.arange(self.num_groups), self.num_rscs_per_group)

    @property
    def initial_rsc(self) -> np.ndarray:
        """Flat (c*S + s) index of each user's initial RSC."""
        flat = self.initial_assoc.reshape(-1, self.num_users)
        return np.argmax(flat, axis=0)

    @property
    def user_group(self) -> np.ndarray:
        """Group each user belongs to, given by its initial RSC."""
        return self.initial_rsc // self.num_rscs_per_group

    def members(self, c: int) -> np.ndarray:
        """Indices of the users belonging to group c."""
        return np.flatnonzero(self.user_group == c)


@dataclass(frozen=True)
class Allocation:
    """
    Decision triple (association, subchannel assignment, per-subchannel power).

    ``assoc`` is (C, S, K); ``subch`` and ``power`` are (C, S, K, N). Entries are
    floats so that relaxed values can be evaluated with the same code; decoded
    allocations hold exact zeros and ones.
    """

    assoc: np.ndarray
    subch: np.ndarray
    power: np.ndarray

    def __post_init__(self) -> None:
        for name in ("assoc", "subch", "power"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if self.subch.shape != self.power.shape or self.assoc.shape != self.subch.shape[:3]:
            raise ValueError(
                f"Inconsistent allocation shapes: assoc {self.assoc.shape}, "
                f"subch {self.subch.shape}, power {self.power.shape}"
            )

    @classmethod
    def empty(cls, num_groups: int, num_rscs: int, num_users: int, num_subchannels: int) -> "Allocation":
        return cls(
            assoc=np.zeros((num_groups, num_rscs, num_users)),
            subch=np.zeros((num_groups, num_rscs, num_users, num_subchannels)),
            power=np.zeros((num_groups, num_rscs, num_users, num_subchannels)),
        )

    @classmethod
    def for_deployment(cls, depl: Deployment) -> "Allocation":
        return cls.empty(*depl.shape)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.power.shape  # type: ignore[return-value]

    @property
    def effective_power(self) -> np.ndarray:
        """Power actually radiated per link: assoc * subch * power, shape (C, S, K, N)."""
        return self.assoc[..., None] * self.subch * self.power

    def group(self, c: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.assoc[c], self.subch[c], self.power[c]

    def with_group(
        self, c: int, assoc: np.ndarray, subch: np.ndarray, power: np.ndarray
    ) -> "Allocation":
        """Copy with group c's slice replaced."""
        new_assoc, new_subch, new_power = (np.array(a) for a in (self.assoc, self.subch, self.power))
        new_assoc[c], new_subch[c], new_power[c] = assoc, subch, power
        return Allocation(new_assoc, new_subch, new_power)

    def serving_rsc(self) -> np.ndarray:
        """Flat (c*S + s) index of the RSC serving each user, -1 if unassociated."""
        num_users = self.assoc.shape[2]
        flat = self.assoc.reshape(-1, num_users)
        serving = np.argmax(flat, axis=0)
        return np.where(flat.max(axis=0) > 0.5, serving, -1)


@dataclass(frozen=True)
class PowerBreakdown:
    """Per-RSC power composition and per-group totals, in W."""

    tx: np.ndarray  # (C, S)
    tc_overhead: np.ndarray  # (C, S)
    circuit: np.ndarray  # (C, S)
    active: np.ndarray  # (C, S) bool
    total_group: np.ndarray  # (C,)

    @property
    def total(self) -> float:
        return float(self.total_group.sum())


@dataclass(frozen=True)
class ConstraintReport:
    """
    Violation magnitudes of every allocation constraint; zero means satisfied.
    """

    tx_power: np.ndarray  # (C, S) max(0, P_tx - P_max)
    min_rate: np.ndarray  # (K,) max(0, R_min - user rate)
    fronthaul: np.ndarray  # (C, S) max(0, RSC rate - B_max)
    association: np.ndarray  # (C, K) max(0, sum_s assoc - 1)
    subchannel_exclusivity: np.ndarray  # (C, S, N) max(0, sum_k subch - 1)
    assoc_binariness: np.ndarray  # (C, S, K) |assoc^2 - assoc|
    subch_binariness: np.ndarray  # (C, S, K, N) |subch^2 - subch|
    negativity: np.ndarray  # (C, S, K, N) max(0, -power)
    power_bounds: Optional[np.ndarray] = None  # (C, N) max(0, group power on n - bound)

    def violations(self) -> Dict[str, float]:
        """Largest violation per constraint."""
        fields = {
            "tx_power": self.tx_power,
            "min_rate": self.min_rate,
            "fronthaul": self.fronthaul,
            "association": self.association,
            "subchannel_exclusivity": self.subchannel_exclusivity,
            "assoc_binariness": self.assoc_binariness,
            "subch_binariness": self.subch_binariness,
            "negativity": self.negativity,
        }
        if self.power_bounds is not None:
            fields["power_bounds"] = self.power_bounds
        return {name: float(np.max(values)) if values.size else 0.0 for name, values in fields.items()}

    @property
    def feasible(self) -> bool:
        return all(value == 0.0 for value in self.violations().values())
