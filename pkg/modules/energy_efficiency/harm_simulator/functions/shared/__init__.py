"""
Shared utilities for the HARM simulator functions.
"""

from .errors import (
    ExperimentError,
    GeometryError,
    OracleRefusal,
    SimulationError,
    SpecError,
)
from .logger import SimulationLogger, create_logger_service
from .rng import derive_rng

__all__ = [
    "SimulationLogger",
    "create_logger_service",
    "derive_rng",
    "SimulationError",
    "SpecError",
    "GeometryError",
    "OracleRefusal",
    "ExperimentError",
]
