from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Tuple, Union

SweepValue = Union[int, float, str]

RECORD_COLUMNS = [
    "sweep_name",
    "sweep_value",
    "mode",
    "drop",
    "ee_bits_per_joule",
    "outage_prob",
    "offload_prob",
    "iters",
    "seconds",
]


@dataclass(frozen=True)
class MetricsRecord:
    """One solved drop of one sweep point under one mode."""

    sweep_name: str
    sweep_value: SweepValue
    mode: str
    drop: int
    ee_bits_per_joule: float
    outage_prob: float
    offload_prob: float
    iters: int
    seconds: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class FailureRecord:
    sweep_value: SweepValue
    mode: str
    drop: int
    error: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class AggregateRecord:
    """Mean and sample standard deviation over the successful drops of one cell."""

    sweep_name: str
    sweep_value: SweepValue
    mode: str
    drops: int
    failures: int
    ee_mean: float
    ee_std: float
    outage_mean: float
    outage_std: float
    offload_mean: float
    offload_std: float
    iters_mean: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ExperimentResult:
    """Everything one experiment produced, in deterministic order."""

    spec: Dict[str, Any]
    records: List[MetricsRecord] = field(default_factory=list)
    aggregates: List[AggregateRecord] = field(default_factory=list)
    failures: List[FailureRecord] = field(default_factory=list)
    # (str(sweep_value), mode, drop) -> trace name -> values
    traces: Dict[Tuple[str, str, int], Dict[str, List[float]]] = field(default_factory=dict)


@dataclass(frozen=True)
class OracleRecord:
    """Exhaustive optimum of one drop next to the TURA allocation on the same drop."""

    sweep_name: str
    sweep_value: SweepValue
    drop: int
    feasible: bool
    oracle_ee: float
    tura_ee: float
    tura_grid_ee: float
    enumeration_size: int

    @property
    def ratio(self) -> float:
        """Share of the oracle EE reached by TURA's grid-projected allocation."""
        return self.tura_grid_ee / self.oracle_ee if self.oracle_ee > 0 else 1.0

    def to_dict(self) -> Dict[str, Any]:
        return {**asdict(self), "ratio": self.ratio}
