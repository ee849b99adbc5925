import time
from typing import Dict, List, Optional

import numpy as np

from ....fn_crc.engine.crc_game_engine import CrcEngine
from ....fn_network_model.engine.radio_model import aggregate_ee
from ....fn_network_model.utils.DataStructures import Allocation, Deployment
from ...config import SolverMode
from ...utils.DataStructures import NetworkSolution
from ..solution import build_solution, solve_groups, unconstrained_bounds
from .ModeHandler import ModeHandler


def relative_change(previous: float, current: float) -> float:
    if previous == 0:
        return 0.0 if current == 0 else float("inf")
    return abs(current - previous) / abs(previous)


class HarmModeHandler(ModeHandler):
    """
    Alternates per-group TURA under the current power bounds and believed
    foreign powers with a CRC game that produces the next bounds, until the
    exact network EE settles.
    """

    mode = SolverMode.HARM

    def solve(self, depl: Deployment) -> NetworkSolution:
        harm = self.harm
        start = time.perf_counter()
        power_bounds: Optional[np.ndarray] = None
        foreign: Optional[List[np.ndarray]] = None
        crc_engine = CrcEngine(self.crc, self.logger)

        best_alloc: Optional[Allocation] = None
        best_bounds = unconstrained_bounds(depl)
        best_ee = -np.inf
        outer_trace: List[float] = []
        traces: Dict[str, List[float]] = {}
        iterations = 0
        converged = False

        for round_index in range(harm.max_outer_rounds):
            results, allocation = solve_groups(
                self.tura,
                depl,
                round_index=round_index,
                power_bounds=power_bounds,
                foreign_powers=foreign,
                pinned_assoc=not harm.traffic_control_enabled,
                onoff_enabled=harm.onoff_enabled,
                fronthaul_limited=harm.fronthaul_limited,
                max_workers=harm.max_workers,
            )
            iterations += sum(result.iterations for result in results)
            ee = aggregate_ee(depl, allocation, harm.onoff_enabled)
            outer_trace.append(ee)
            if ee > best_ee:
                best_alloc, best_ee = allocation, ee
                best_bounds = unconstrained_bounds(depl) if power_bounds is None else power_bounds

            self.logger.verbose("DEBUG", f"HARM round {round_index}: exact EE {ee:.6g} bit/J")
            if depl.num_groups == 1:
                converged = all(result.converged for result in results)
                traces["tura_fitness"] = list(results[0].trace)
                break
            if len(outer_trace) > 1 and relative_change(outer_trace[-2], ee) <= harm.outer_conv_threshold:
                converged = True
                break
            if round_index == harm.max_outer_rounds - 1:
                break

            game = crc_engine.run(depl, allocation, round_index=round_index, onoff_enabled=harm.onoff_enabled)
            iterations += game.iterations
            traces[f"crc_round{round_index}"] = [float(v) for v in game.trace.sum(axis=1)]
            power_bounds = game.power_bounds
            foreign = game.believed_foreign_power

        if not converged:
            self.logger.verbose(
                "INFO", f"HARM stopped after {len(outer_trace)} rounds without settling; keeping the best round"
            )
        self.logger.debug(
            f"HARM: {len(outer_trace)} rounds, best exact EE {best_ee:.6g} bit/J in {time.perf_counter() - start:.2f}s"
        )
        return build_solution(
            self.mode,
            depl,
            best_alloc,
            power_bounds=best_bounds,
            converged=converged,
            iterations=iterations,
            onoff_enabled=harm.onoff_enabled,
            outer_trace=outer_trace,
            traces=traces,
        )
