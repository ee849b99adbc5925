"""Exception hierarchy shared by the simulator packages and mapped to CLI exit codes."""


class SimulationError(Exception):
    """Base class for every error raised by the simulator."""


class SpecError(SimulationError, ValueError):
    """Invalid experiment spec, scenario or solver configuration."""


class GeometryError(SimulationError, RuntimeError):
    """Users cannot be placed under the minimum RSC distance constraint."""


class OracleRefusal(SimulationError, RuntimeError):
    """Exhaustive enumeration would exceed the configured budget."""


class ExperimentError(SimulationError, RuntimeError):
    """Every drop of a sweep cell failed."""
