from ....fn_crc.engine.crc_game_engine import CrcEngine
from ....fn_network_model.utils.DataStructures import Deployment
from ...config import SolverMode
from ...utils.DataStructures import NetworkSolution
from ..solution import build_solution, rsrp_allocation
from .ModeHandler import ModeHandler


class CrcModeHandler(ModeHandler):
    """CRC game alone, every CSC starting from its max-RSRP round-robin plan."""

    mode = SolverMode.CRC

    def solve(self, depl: Deployment) -> NetworkSolution:
        start = rsrp_allocation(depl)
        result = CrcEngine(self.crc, self.logger).run(depl, start, onoff_enabled=self.harm.onoff_enabled)
        return build_solution(
            self.mode,
            depl,
            result.allocation,
            power_bounds=result.power_bounds,
            converged=result.converged,
            iterations=result.iterations,
            onoff_enabled=self.harm.onoff_enabled,
            traces={"crc_utility": [float(v) for v in result.trace.sum(axis=1)]},
        )
