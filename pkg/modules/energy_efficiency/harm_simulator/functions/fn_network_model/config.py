from __future__ import annotations

from enum import Enum
from typing import Any, Callable, Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..shared.units import dbm_to_watt, khz_to_hz, mbps_to_bps


class LineOfSight(str, Enum):
    """
    Rule selecting the LoS or NLoS pathloss formula for an RSC-user link.
    """

    GRID = "grid"  # LoS iff the segment crosses no wall laid on the RSC grid lines
    ALL_LOS = "all_los"  # every link uses the LoS formula
    ALL_NLOS = "all_nlos"  # every link uses the NLoS formula with num_walls walls


# Engineering-unit aliases accepted in config files, converted to linear SI at load
_UNIT_ALIASES: Dict[str, Tuple[str, Callable[[float], float]]] = {
    "noise_psd_dbm_per_hz": ("noise_psd", dbm_to_watt),
    "signaling_overhead_dbm": ("signaling_overhead", dbm_to_watt),
    "max_tx_power_dbm": ("max_tx_power", dbm_to_watt),
    "min_rate_mbps": ("min_rate", mbps_to_bps),
    "fronthaul_cap_mbps": ("fronthaul_cap", mbps_to_bps),
    "subchannel_bandwidth_khz": ("subchannel_bandwidth", khz_to_hz),
}


class ScenarioParams(BaseModel):
    """
    Physical and algorithmic constants of one simulated network.

    Every power, rate and bandwidth is linear SI (W, bit/s, Hz). Config files may
    give them in dBm, Mbit/s or kHz through the ``*_dbm``/``*_mbps``/``*_khz``
    aliases, which are converted before validation.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    num_groups: int = Field(1, ge=1, description="Number of localized C-RAN groups C")
    num_rscs_per_group: int = Field(6, ge=1, description="RSCs per group S")
    num_users: int = Field(9, ge=1, description="Number of users K")
    num_subchannels: int = Field(50, ge=1, description="Number of subchannels N")
    subchannel_bandwidth: float = Field(360e3, gt=0, description="Subchannel bandwidth W in Hz")
    noise_psd: float = Field(dbm_to_watt(-174.0), gt=0, description="Noise power spectral density N0 in W/Hz")
    circuit_active: float = Field(6.8, gt=0, description="Circuit power of an active RSC in W")
    circuit_sleep: float = Field(4.3, gt=0, description="Circuit power of a sleeping RSC in W")
    signaling_overhead: float = Field(dbm_to_watt(1.0), gt=0, description="Signaling power per offloaded user in W")
    max_tx_power: float = Field(dbm_to_watt(20.0), gt=0, description="Maximum transmit power per RSC in W")
    min_rate: float = Field(10e6, gt=0, description="Minimum data rate per user in bit/s")
    fronthaul_cap: Tuple[float, ...] = Field(
        (20e6,), description="Fronthaul capacity in bit/s, one value for all RSCs or one per RSC"
    )
    area_side: float = Field(90.0, gt=0, description="Side length r of the square coverage area in m")
    min_rsc_user_distance: float = Field(2.0, ge=0, description="Minimum RSC-user distance in m")
    num_walls: int = Field(1, ge=1, description="Walls on every link when line_of_sight is all_nlos")
    line_of_sight: LineOfSight = Field(LineOfSight.GRID, description="LoS/NLoS selection rule")
    pathloss_offset_db: float = Field(174.32, description="Constant term added to both pathloss formulas in dB")
    power_levels: int = Field(3, ge=1, description="Discrete power levels L per RSC for the game and oracle")
    error_ratio: float = Field(0.0, ge=0.0, le=1.0, description="Error ratio rho of exchanged beliefs")
    rng_seed: int = Field(0, ge=0, description="Seed for deployment generation")
    placement_retries: int = Field(1000, ge=1, description="Rejection-sampling attempts per user")

    @model_validator(mode="before")
    @classmethod
    def _convert_units(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        for alias, (target, convert) in _UNIT_ALIASES.items():
            if alias not in data:
                continue
            if target in data:
                raise ValueError(f"Give either '{alias}' or '{target}', not both")
            value = data.pop(alias)
            if isinstance(value, (list, tuple)):
                data[target] = [convert(float(v)) for v in value]
            else:
                data[target] = convert(float(value))
        return data

    @field_validator("fronthaul_cap", mode="before")
    @classmethod
    def _wrap_scalar_fronthaul(cls, value: Any) -> Any:
        if isinstance(value, (int, float)):
            return (float(value),)
        return value

    @model_validator(mode="after")
    def _check_fronthaul(self) -> "ScenarioParams":
        caps = self.fronthaul_cap
        if len(caps) not in (1, self.num_rscs):
            raise ValueError(
                f"fronthaul_cap has {len(caps)} entries, expected 1 or {self.num_rscs} (C*S)"
            )
        if any(not cap > 0 for cap in caps):
            raise ValueError("fronthaul_cap entries must be positive")
        return self

    @property
    def num_rscs(self) -> int:
        return self.num_groups * self.num_rscs_per_group

    @property
    def noise_floor(self) -> float:
        """Noise power N0*W over one subchannel, in W."""
        return self.noise_psd * self.subchannel_bandwidth

    @property
    def fronthaul_caps(self) -> np.ndarray:
        """Fronthaul capacity per RSC as a (C, S) array."""
        caps = np.asarray(self.fronthaul_cap, dtype=float)
        if caps.size == 1:
            caps = np.full(self.num_rscs, caps[0])
        return caps.reshape(self.num_groups, self.num_rscs_per_group)

    @property
    def power_level_values(self) -> np.ndarray:
        """Discrete transmit power values l*P_max/L for l = 1..L."""
        levels = np.arange(1, self.power_levels + 1, dtype=float)
        return levels * self.max_tx_power / self.power_levels

    def with_overrides(self, **overrides: Any) -> "ScenarioParams":
        """Return a validated copy with some fields replaced (unit aliases allowed)."""
        data = self.model_dump()
        for alias, (target, _) in _UNIT_ALIASES.items():
            if alias in overrides:
                data.pop(target, None)
        data.update(overrides)
        return ScenarioParams(**data)
