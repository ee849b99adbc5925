from abc import ABC, abstractmethod

from ....fn_crc.config import CrcConfig
from ....fn_network_model.utils.DataStructures import Deployment
from ....fn_tura.config import QpsoConfig
from ....fn_tura.engine.qpso_engine import TuraEngine
from ....shared.logger import SimulationLogger
from ...config import HarmConfig
from ...utils.DataStructures import NetworkSolution


class ModeHandler(ABC):
    """Abstract base class for the schemes that solve one drop."""

    def __init__(
        self,
        qpso: QpsoConfig,
        crc: CrcConfig,
        harm: HarmConfig,
        logger: SimulationLogger,
    ):
        self.qpso = qpso
        self.crc = crc
        self.harm = harm
        self.logger = logger
        self.tura = TuraEngine(qpso, logger)

    @abstractmethod
    def solve(self, depl: Deployment) -> NetworkSolution:
        """Solve the drop and report the allocation under exact interference."""
        pass
