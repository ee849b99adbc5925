from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SelectionRule(str, Enum):
    """
    How a CSC turns its probability vector into the action it plays.
    """

    ARGMAX = "argmax"  # most probable action, lowest index on ties
    SAMPLE = "sample"  # inverse-CDF draw from the probability vector


class StopRule(str, Enum):
    """
    Which per-CSC utility series the relative-change stop test is applied to.
    """

    REALIZED = "realized"  # utility of the profile played at iteration t
    AVERAGE = "average"  # running average of the realized utilities


class CrcConfig(BaseModel):
    """Learning, action-space and stopping settings of the CRC game."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    conv_threshold: float = Field(1e-4, gt=0, description="Relative utility-change threshold theta_th")
    max_iters: int = Field(1000, ge=1, description="Iteration cap of the learning loop")
    min_iters: int = Field(1, ge=1, description="Iterations played before the stop rule is tested")
    stop_rule: StopRule = Field(StopRule.REALIZED, description="Utility series the stop test compares")
    stop_window: int = Field(
        50, ge=1, description="Consecutive iterations the relative change must stay within theta_th"
    )
    action_cap: int = Field(512, ge=2, description="Maximum joint actions per CSC")
    mutation_rate: float = Field(
        0.5, gt=0, le=1, description="Per-link redraw probability when sampling actions around the incumbent"
    )
    selection: SelectionRule = Field(SelectionRule.SAMPLE, description="Action selection rule")
    xi_factor: float = Field(2.0, gt=1, description="xi = max(1, xi_factor * |A_c| * max regret)")
    rng_seed: int = Field(0, ge=0, description="Seed of the sampling, selection and exchange streams")

    @model_validator(mode="after")
    def _check_iters(self) -> "CrcConfig":
        if self.min_iters > self.max_iters:
            raise ValueError(f"min_iters ({self.min_iters}) exceeds max_iters ({self.max_iters})")
        return self
