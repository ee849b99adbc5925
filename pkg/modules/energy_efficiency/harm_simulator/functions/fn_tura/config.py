from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class QpsoConfig(BaseModel):
    """Swarm, penalty and stopping settings of the TURA solver."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    swarm_size: int = Field(40, ge=1, description="Number of candidate solutions I")
    max_iters: int = Field(600, ge=1, description="Maximum number of iterations T")
    penalty_factor: float = Field(1.5, gt=0, description="Penalty factor alpha")
    beta_max: float = Field(1.2, gt=0, description="Contraction coefficient at t = 0")
    beta_min: float = Field(0.5, gt=0, description="Contraction coefficient at t = T")
    conv_threshold: float = Field(1e-4, gt=0, description="Gap-ratio convergence threshold F_th")
    rng_seed: int = Field(0, ge=0, description="Seed of the swarm random streams")
    objective_unit: float = Field(1e6, gt=0, description="bit/J per fitness unit of the EE reward")
    rate_unit: float = Field(1e6, gt=0, description="bit/s per unit in the rate hinge terms")
    power_unit: float = Field(1.0, gt=0, description="W per unit in the power hinge terms")
    warm_start: bool = Field(True, description="Seed one candidate with the max-RSRP round-robin plan")
    repair_power_budget: bool = Field(
        True, description="Scale down RSCs whose decoded transmit power exceeds P_max"
    )

    @model_validator(mode="after")
    def _check_beta_range(self) -> "QpsoConfig":
        if self.beta_max < self.beta_min:
            raise ValueError(f"beta_max ({self.beta_max}) must be >= beta_min ({self.beta_min})")
        return self
