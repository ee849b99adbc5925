from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..fn_crc.config import CrcConfig
from ..fn_harm.config import HarmConfig, SolverMode
from ..fn_network_model.config import _UNIT_ALIASES, ScenarioParams
from ..fn_oracle.config import OracleLimits
from ..fn_tura.config import QpsoConfig
from ..shared.errors import SpecError


class OutputFormat(str, Enum):
    """
    Format of the per-drop record file.
    """

    CSV = "csv"
    JSON = "json"


# Configuration classes
class Parameters(BaseModel):
    model_config = ConfigDict(extra="forbid")

    num_drops: int = Field(1, ge=1, description="Monte Carlo drops per sweep point and mode")
    seed: int = Field(0, ge=0, description="Experiment seed; drop seeds are derived from it")
    traces: bool = Field(False, description="Write per-iteration trace files")
    max_workers: int = Field(1, ge=1, description="Drops solved concurrently")
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field("INFO", description="Log level")
    verbose: bool = Field(False, description="Enable verbose output")
    output_format: OutputFormat = Field(OutputFormat.CSV, description="Per-drop record format")


class SweepSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Scenario field (or unit alias) varied by the sweep")
    values: List[Any] = Field(..., min_length=1, description="Values taken by the swept field")

    @field_validator("name")
    @classmethod
    def _known_field(cls, name: str) -> str:
        if name not in ScenarioParams.model_fields and name not in _UNIT_ALIASES:
            raise ValueError(f"Unknown sweep field '{name}'")
        return name


class VariantSpec(BaseModel):
    """Named scenario/flag overrides compared side by side, labelled mode:variant."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    harm: Dict[str, Any] = Field(default_factory=dict, description="HarmConfig overrides")
    scenario: Dict[str, Any] = Field(default_factory=dict, description="ScenarioParams overrides")
    modes: Optional[List[SolverMode]] = Field(None, description="Modes run for this variant; defaults to data.modes")


class ConfigData(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field("experiment", description="Experiment name used in output file names")
    scenario: Dict[str, Any] = Field(default_factory=dict, description="ScenarioParams fields, unit aliases allowed")
    qpso: QpsoConfig = Field(default_factory=QpsoConfig)
    crc: CrcConfig = Field(default_factory=CrcConfig)
    harm: HarmConfig = Field(default_factory=HarmConfig)
    oracle: OracleLimits = Field(default_factory=OracleLimits)
    sweep: SweepSpec
    modes: List[SolverMode] = Field(default_factory=lambda: [SolverMode.HARM], min_length=1)
    variants: List[VariantSpec] = Field(default_factory=list)
    hold_total_rscs: Optional[int] = Field(
        None, ge=1, description="Keep num_groups * num_rscs_per_group at this value while num_groups varies"
    )

    @model_validator(mode="after")
    def _check_cells(self) -> "ConfigData":
        names = [variant.name for variant in self.variants]
        if len(names) != len(set(names)):
            raise ValueError(f"Variant names must be unique, got {names}")
        for value in self.sweep.values:
            for variant in self.variants or [None]:
                self.scenario_for(value, variant)
        return self

    def scenario_for(self, value: Any, variant: Optional[VariantSpec] = None) -> ScenarioParams:
        """Validated scenario of one sweep point under one variant."""
        data = merge_scenario(self.scenario, variant.scenario if variant else {})
        data = merge_scenario(data, {self.sweep.name: value})
        if self.hold_total_rscs is not None:
            groups = int(data.get("num_groups", 1))
            if self.hold_total_rscs % groups:
                raise ValueError(f"hold_total_rscs={self.hold_total_rscs} is not divisible by num_groups={groups}")
            data["num_rscs_per_group"] = self.hold_total_rscs // groups
        return ScenarioParams(**data)

    def cells(self) -> Iterator[Tuple[Any, SolverMode, Optional[VariantSpec]]]:
        """(sweep value, mode, variant) in output order."""
        for value in self.sweep.values:
            for variant in self.variants or [None]:
                modes = variant.modes if variant and variant.modes else self.modes
                for mode in modes:
                    yield value, mode, variant


class ExperimentSpec(BaseModel):
    """Fully resolved experiment: run-level parameters and the experiment data."""

    model_config = ConfigDict(extra="forbid")

    parameters: Parameters = Field(default_factory=Parameters)
    data: ConfigData


def merge_scenario(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Overlay scenario fields; an override drops the base's other unit form of the same field."""
    merged = dict(base)
    targets = {alias: target for alias, (target, _) in _UNIT_ALIASES.items()}
    for alias, target in targets.items():
        if alias in overrides and target in overrides:
            raise SpecError(f"Give either '{alias}' or '{target}', not both")
    for key, value in overrides.items():
        if key in targets:
            merged.pop(targets[key], None)
        else:
            for alias, target in targets.items():
                if target == key:
                    merged.pop(alias, None)
        merged[key] = value
    return merged


def mode_label(mode: SolverMode, variant: Optional[VariantSpec]) -> str:
    return f"{mode.value}:{variant.name}" if variant else mode.value
