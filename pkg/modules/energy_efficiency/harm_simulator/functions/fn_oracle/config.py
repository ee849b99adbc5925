from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class OracleLimits(BaseModel):
    """Enumeration budget of the exhaustive oracle."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_enumeration: int = Field(10**7, gt=0, description="Largest number of candidate allocations enumerated")
    power_levels: Optional[int] = Field(
        None, gt=0, description="Power grid L_oracle; defaults to the scenario's power_levels"
    )
    onoff_enabled: bool = Field(True, description="Sleeping RSCs draw P^(CS) instead of P^(CA)")
    fronthaul_limited: bool = Field(True, description="Enforce the fronthaul capacity constraint")
    max_workers: int = Field(1, ge=1, description="Threads sharing the association loop")
