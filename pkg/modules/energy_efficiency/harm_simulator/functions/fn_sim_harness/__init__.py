"""
Simulation Harness

Experiment specs, Monte Carlo orchestration over sweep points, modes and
drops, metric aggregation and report files.
"""

from .config import ConfigData, ExperimentSpec, OutputFormat, Parameters, SweepSpec, VariantSpec
from .pipeline import aggregate, drop_seed, run_experiment, run_oracle_check
from .services.ReportService import GeneralReportService, emit, load_records
from .utils.DataStructures import AggregateRecord, ExperimentResult, FailureRecord, MetricsRecord, OracleRecord

__all__ = [
    "ExperimentSpec",
    "ConfigData",
    "Parameters",
    "SweepSpec",
    "VariantSpec",
    "OutputFormat",
    "run_experiment",
    "run_oracle_check",
    "drop_seed",
    "aggregate",
    "emit",
    "load_records",
    "GeneralReportService",
    "MetricsRecord",
    "AggregateRecord",
    "FailureRecord",
    "ExperimentResult",
    "OracleRecord",
]
