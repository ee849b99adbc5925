from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class SolverMode(str, Enum):
    """
    Which resource-management scheme solves a drop.
    """

    TURA = "tura"  # centralized TURA over every RSC
    CRC = "crc"  # CRC game alone from the max-RSRP plan
    HARM = "harm"  # TURA per group alternating with CRC between groups
    RURA = "rura"  # centralized, association pinned to max-RSRP, RSCs always on


class HarmConfig(BaseModel):
    """Outer loop and scenario flags of the HARM orchestrator."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: SolverMode = Field(SolverMode.HARM, description="Scheme used to solve each drop")
    max_outer_rounds: int = Field(20, ge=1, description="Cap on TURA/CRC rounds")
    outer_conv_threshold: float = Field(1e-3, gt=0, description="Relative network-EE change that stops the loop")
    onoff_enabled: bool = Field(True, description="RSCs with no associated user sleep")
    fronthaul_limited: bool = Field(True, description="Enforce the fronthaul capacity constraint")
    traffic_control_enabled: bool = Field(True, description="Users may be offloaded from their max-RSRP RSC")
    max_workers: int = Field(1, ge=1, description="Threads running the per-group TURA solvers of one round")
