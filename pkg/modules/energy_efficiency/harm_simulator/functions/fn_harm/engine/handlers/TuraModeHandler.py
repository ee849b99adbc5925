from ....fn_network_model.engine.deployment import centralize
from ....fn_network_model.utils.DataStructures import Deployment
from ...config import SolverMode
from ...utils.DataStructures import NetworkSolution
from ..solution import build_solution, solve_groups
from .ModeHandler import ModeHandler


class TuraModeHandler(ModeHandler):
    """Centralized TURA: every RSC under one CSC, one QPSO run."""

    mode = SolverMode.TURA

    def solve(self, depl: Deployment) -> NetworkSolution:
        central = centralize(depl)
        results, allocation = solve_groups(
            self.tura,
            central,
            round_index=0,
            pinned_assoc=not self.harm.traffic_control_enabled,
            onoff_enabled=self.harm.onoff_enabled,
            fronthaul_limited=self.harm.fronthaul_limited,
        )
        result = results[0]
        return build_solution(
            self.mode,
            central,
            allocation,
            converged=result.converged,
            iterations=result.iterations,
            onoff_enabled=self.harm.onoff_enabled,
            traces={"tura_fitness": list(result.trace)},
        )
