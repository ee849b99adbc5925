"""
Test configuration and fixtures for the HARM simulator.
"""

import sys
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

import numpy as np
import pytest
import yaml

# Add project root to path for imports
project_root = Path(__file__).resolve().parent.parent.parent.parent.parent
sys.path.insert(0, str(project_root))

from modules.energy_efficiency.harm_simulator.functions.fn_crc.config import (  # noqa: E402
    CrcConfig,
    SelectionRule,
)
from modules.energy_efficiency.harm_simulator.functions.fn_harm.config import HarmConfig  # noqa: E402
from modules.energy_efficiency.harm_simulator.functions.fn_network_model.config import (  # noqa: E402
    ScenarioParams,
)
from modules.energy_efficiency.harm_simulator.functions.fn_network_model.engine.deployment import (  # noqa: E402
    build_deployment,
)
from modules.energy_efficiency.harm_simulator.functions.fn_network_model.utils.DataStructures import (  # noqa: E402
    Allocation,
    Deployment,
)
from modules.energy_efficiency.harm_simulator.functions.fn_tura.config import QpsoConfig  # noqa: E402
from modules.energy_efficiency.harm_simulator.functions.shared.logger import SimulationLogger  # noqa: E402

# (c, s, k, n, power in W)
Link = Tuple[int, int, int, int, float]

LINK_GAIN = 1e-9


@pytest.fixture
def quiet_logger() -> SimulationLogger:
    """Logger that only prints errors."""
    return SimulationLogger("ERROR", False)


@pytest.fixture
def tiny_params() -> ScenarioParams:
    """Oracle-sized scenario: one group, two RSCs, two users, two subchannels, three levels."""
    return ScenarioParams(
        num_groups=1,
        num_rscs_per_group=2,
        num_users=2,
        num_subchannels=2,
        power_levels=3,
        pathloss_offset_db=0.0,
        area_side=20.0,
        min_rate=1e6,
    )


@pytest.fixture
def two_group_params() -> ScenarioParams:
    """Two groups of one RSC each, two users, two subchannels, two power levels."""
    return ScenarioParams(
        num_groups=2,
        num_rscs_per_group=1,
        num_users=2,
        num_subchannels=2,
        power_levels=2,
        pathloss_offset_db=0.0,
        area_side=20.0,
        min_rate=1e6,
    )


@pytest.fixture
def deployment_factory() -> Callable[..., Deployment]:
    """Hand-built deployment with every gain equal to ``gain`` unless ``gains`` is given."""

    def make(
        params: ScenarioParams,
        gain: float = LINK_GAIN,
        gains: Optional[np.ndarray] = None,
        initial_assoc: Optional[np.ndarray] = None,
    ) -> Deployment:
        shape = (params.num_groups, params.num_rscs_per_group, params.num_users, params.num_subchannels)
        if gains is None:
            gains = np.full(shape, gain)
        return build_deployment(params, gains, initial_assoc=initial_assoc)

    return make


@pytest.fixture
def tiny_deployment(tiny_params: ScenarioParams, deployment_factory) -> Deployment:
    """Tiny scenario with equal gains; both users start on RSC 0."""
    return deployment_factory(tiny_params)


@pytest.fixture
def two_group_deployment(two_group_params: ScenarioParams, deployment_factory) -> Deployment:
    """Each group's RSC is 100x stronger towards its own user than towards the other one."""
    gains = np.full((2, 1, 2, 2), LINK_GAIN / 100)
    gains[0, 0, 0, :] = LINK_GAIN
    gains[1, 0, 1, :] = LINK_GAIN
    return deployment_factory(two_group_params, gains=gains)


@pytest.fixture
def allocation_factory() -> Callable[[Deployment, Iterable[Link]], Allocation]:
    """Allocation associating and assigning every listed link at the given power."""

    def make(depl: Deployment, links: Iterable[Link]) -> Allocation:
        C, S, K, N = depl.shape
        assoc = np.zeros((C, S, K))
        subch = np.zeros((C, S, K, N))
        power = np.zeros((C, S, K, N))
        for c, s, k, n, p in links:
            assoc[c, s, k] = 1.0
            subch[c, s, k, n] = 1.0
            power[c, s, k, n] = p
        return Allocation(assoc, subch, power)

    return make


@pytest.fixture
def fast_qpso() -> QpsoConfig:
    """Small swarm for unit and integration tests."""
    return QpsoConfig(swarm_size=10, max_iters=30, rng_seed=7)


@pytest.fixture
def fast_crc() -> CrcConfig:
    """Short sampled game for unit and integration tests."""
    return CrcConfig(max_iters=40, min_iters=5, action_cap=16, selection=SelectionRule.SAMPLE, rng_seed=7)


@pytest.fixture
def fast_harm() -> HarmConfig:
    """Outer loop capped at three rounds."""
    return HarmConfig(max_outer_rounds=3)


@pytest.fixture
def tiny_spec_data() -> Dict[str, Any]:
    """Spec document for a one-drop TURA run on a tiny generated network."""
    return {
        "parameters": {"num_drops": 1, "seed": 3, "log_level": "ERROR"},
        "data": {
            "name": "tiny",
            "scenario": {
                "num_groups": 1,
                "num_rscs_per_group": 2,
                "num_users": 2,
                "num_subchannels": 2,
                "area_side": 20,
                "min_rate_mbps": 1,
                "pathloss_offset_db": 0.0,
            },
            "qpso": {"swarm_size": 6, "max_iters": 10},
            "crc": {"max_iters": 20, "action_cap": 16},
            "harm": {"max_outer_rounds": 2},
            "sweep": {"name": "num_users", "values": [2]},
            "modes": ["tura"],
        },
    }


@pytest.fixture
def spec_file_factory(tmp_path: Path) -> Callable[[Dict[str, Any], str], Path]:
    """Write a spec document as YAML into the test's temporary directory."""

    def write(document: Dict[str, Any], name: str = "spec.yaml") -> Path:
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(document, f, sort_keys=False)
        return path

    return write
