"""
HARM Engine

Solves one drop with the configured resource-management scheme: centralized
TURA, the CRC game alone, the hybrid TURA/CRC loop, or the max-RSRP RURA
baseline. Reported EEs always use exact interference.

Features:
- Handler per scheme, selected by HarmConfig.mode
- Scenario flags for RSC on/off, fronthaul limits and traffic control
- Outer loop with relative-EE stop rule and best-round bookkeeping
- Outage and offloading metrics per solved drop
"""

from __future__ import annotations

from dataclasses import replace
from typing import Dict, Optional

from ...fn_crc.config import CrcConfig
from ...fn_network_model.config import ScenarioParams
from ...fn_network_model.utils.DataStructures import Deployment
from ...fn_tura.config import QpsoConfig
from ...shared.logger import SimulationLogger
from ..config import HarmConfig, SolverMode
from ..utils.DataStructures import NetworkSolution
from .handlers import (
    CrcModeHandler,
    HarmModeHandler,
    ModeHandler,
    RuraModeHandler,
    TuraModeHandler,
)
from .solution import network_metrics


class HarmEngine:
    """Dispatches a drop to the handler of the configured scheme."""

    def __init__(
        self,
        qpso: QpsoConfig,
        crc: CrcConfig,
        harm: HarmConfig,
        logger: SimulationLogger = SimulationLogger("INFO", False),
    ):
        self.qpso = qpso
        self.crc = crc
        self.harm = harm
        self.logger = logger
        self.mode_handlers = self._initialize_mode_handlers()

    def _initialize_mode_handlers(self) -> Dict[str, ModeHandler]:
        args = (self.qpso, self.crc, self.harm, self.logger)
        return {
            SolverMode.TURA.value: TuraModeHandler(*args),
            SolverMode.CRC.value: CrcModeHandler(*args),
            SolverMode.HARM.value: HarmModeHandler(*args),
            SolverMode.RURA.value: RuraModeHandler(*args),
        }

    def solve(self, depl: Deployment, mode: Optional[SolverMode] = None) -> NetworkSolution:
        mode = SolverMode(mode or self.harm.mode)
        handler = self.mode_handlers.get(mode.value)
        if handler is None:
            raise ValueError(f"No handler for mode '{mode.value}'")
        self.logger.verbose("DEBUG", f"Solving drop with {mode.value} ({depl.num_groups} groups)")
        return handler.solve(depl)


def _with_params(params: ScenarioParams, depl: Deployment) -> Deployment:
    return depl if params is depl.params else replace(depl, params=params)


def run_harm(
    params: ScenarioParams,
    depl: Deployment,
    qpso_cfg: QpsoConfig,
    harm_cfg: HarmConfig,
    crc_cfg: Optional[CrcConfig] = None,
    logger: Optional[SimulationLogger] = None,
) -> NetworkSolution:
    """Solve with the hybrid TURA/CRC loop, whatever ``harm_cfg.mode`` says."""
    engine = HarmEngine(qpso_cfg, crc_cfg or CrcConfig(), harm_cfg, logger or SimulationLogger("INFO", False))
    return engine.solve(_with_params(params, depl), SolverMode.HARM)


def run_rura(
    params: ScenarioParams,
    depl: Deployment,
    qpso_cfg: QpsoConfig,
    harm_cfg: Optional[HarmConfig] = None,
    logger: Optional[SimulationLogger] = None,
) -> NetworkSolution:
    """Solve the max-RSRP baseline."""
    engine = HarmEngine(qpso_cfg, CrcConfig(), harm_cfg or HarmConfig(), logger or SimulationLogger("INFO", False))
    return engine.solve(_with_params(params, depl), SolverMode.RURA)


__all__ = ["HarmEngine", "run_harm", "run_rura", "network_metrics"]
