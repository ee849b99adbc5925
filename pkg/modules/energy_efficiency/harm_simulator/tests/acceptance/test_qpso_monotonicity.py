"""
Acceptance: the global-best fitness never decreases.
"""

import numpy as np
import pytest

from modules.energy_efficiency.harm_simulator.functions.fn_network_model.engine.deployment import (
    generate_deployment,
)
from modules.energy_efficiency.harm_simulator.functions.fn_tura.config import QpsoConfig
from modules.energy_efficiency.harm_simulator.functions.fn_tura.engine.group_problem import GroupProblem
from modules.energy_efficiency.harm_simulator.functions.fn_tura.engine.qpso_engine import TuraEngine


class TestQpsoMonotonicity:
    """Test best-so-far traces on generated oracle-sized networks."""

    @pytest.mark.parametrize("seed", range(10))
    def test_trace_is_nondecreasing(self, seed: int, tiny_params, quiet_logger) -> None:
        """Test every consecutive pair of the global-best trace."""
        # Arrange
        depl = generate_deployment(tiny_params, seed=seed)
        engine = TuraEngine(QpsoConfig(swarm_size=20, max_iters=200, rng_seed=seed), quiet_logger)

        # Act
        result = engine.run(GroupProblem(depl=depl, group=0))

        # Assert
        trace = np.array(result.trace)
        assert len(trace) == result.iterations + 1
        assert np.all(np.diff(trace) >= 0.0)
        assert trace[-1] == result.best_fitness

    @pytest.mark.parametrize("seed", range(5))
    def test_pinned_and_bounded_runs(self, seed: int, tiny_params, quiet_logger) -> None:
        """Test monotonicity with pinned association and per-subchannel bounds."""
        # Arrange
        depl = generate_deployment(tiny_params, seed=seed)
        problem = GroupProblem(depl=depl, group=0, power_bounds=np.full(2, 0.05), pinned_assoc=True)

        # Act
        result = TuraEngine(QpsoConfig(swarm_size=10, max_iters=100, rng_seed=seed), quiet_logger).run(problem)

        # Assert
        assert np.all(np.diff(result.trace) >= 0.0)
