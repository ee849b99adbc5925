"""
Acceptance: Monte Carlo trends of the bundled recipes.

Every test runs at least fifty drops per point and is marked slow; run them
with ``pytest -m slow``.
"""

from collections import defaultdict
from typing import Any, Dict, List

import pytest

from modules.energy_efficiency.harm_simulator.config.configuration_manager import (
    LOG_LEVEL_ENV,
    ConfigurationManager,
)
from modules.energy_efficiency.harm_simulator.functions.fn_sim_harness.pipeline import run_experiment
from modules.energy_efficiency.harm_simulator.functions.fn_sim_harness.utils.DataStructures import (
    ExperimentResult,
)

pytestmark = pytest.mark.slow

DROPS = 50


@pytest.fixture
def run_preset(monkeypatch, quiet_logger):
    monkeypatch.delenv(LOG_LEVEL_ENV, raising=False)
    manager = ConfigurationManager()

    def run(preset: str, data: Dict[str, Any], drops: int = DROPS) -> ExperimentResult:
        overrides = {"parameters": {"num_drops": drops, "seed": 1, "log_level": "ERROR", "max_workers": 4}, "data": data}
        return run_experiment(manager.resolve(preset=preset, overrides=overrides), quiet_logger)

    return run


def means(result: ExperimentResult, field: str) -> Dict[tuple, float]:
    return {(a.sweep_value, a.mode): getattr(a, field) for a in result.aggregates}


def per_drop(result: ExperimentResult, field: str) -> Dict[str, List[float]]:
    values: Dict[str, List[float]] = defaultdict(list)
    for record in result.records:
        values[record.mode].append(getattr(record, field))
    return values


class TestMonteCarloTrends:
    """Test the qualitative behaviour of the solvers across sweeps."""

    def test_crc_iterations_grow_with_load(self, run_preset) -> None:
        """Test iterations-to-converge nondecreasing over 9, 15 and 21 users."""
        result = run_preset("fig4", {"sweep": {"name": "num_users", "values": [9, 15, 21]}}, drops=20)

        iters = [a.iters_mean for a in result.aggregates]
        assert iters == sorted(iters)

    def test_traffic_control_lowers_outage(self, run_preset) -> None:
        """Test TURA outage at most RURA outage, and no outage at four users."""
        # Act
        result = run_preset("fig5", {})

        # Assert
        outage = means(result, "outage_mean")
        for users in (4, 5, 6, 7):
            assert outage[(users, "tura")] <= outage[(users, "rura")]
        assert outage[(4, "tura")] == 0.0
        assert outage[(4, "rura")] == 0.0

    def test_sleeping_rscs_save_energy(self, run_preset) -> None:
        """Test on/off EE at least always-on EE on 80% of paired drops."""
        # Arrange
        data = {
            "sweep": {"name": "num_users", "values": [9]},
            "variants": [
                {"name": "onoff", "harm": {"onoff_enabled": True}},
                {"name": "always_on", "harm": {"onoff_enabled": False}},
            ],
        }

        # Act
        ee = per_drop(run_preset("fig6", data), "ee_bits_per_joule")

        # Assert
        wins = sum(on >= off for on, off in zip(ee["tura:onoff"], ee["tura:always_on"]))
        assert wins >= 0.8 * DROPS

    def test_more_fronthaul_less_outage(self, run_preset) -> None:
        """Test outage at 30 Mbit/s at most outage at 20 Mbit/s for every load and mode."""
        outage = means(run_preset("fig10", {}), "outage_mean")

        for users in (9, 12, 15, 18, 21):
            for mode in ("tura", "harm", "crc", "rura"):
                assert outage[(users, f"{mode}:b30")] <= outage[(users, f"{mode}:b20")]

    def test_exchange_errors_cost_energy_efficiency(self, run_preset) -> None:
        """Test mean HARM EE with exact beliefs at least the EE with noisy beliefs."""
        # Arrange
        data = {
            "sweep": {"name": "num_users", "values": [12]},
            "variants": [
                {"name": "exact", "scenario": {"num_groups": 3, "error_ratio": 0.0}},
                {"name": "noisy", "scenario": {"num_groups": 3, "error_ratio": 0.01}},
            ],
        }

        # Act
        ee = means(run_preset("fig8", data), "ee_mean")

        # Assert
        assert ee[(12, "harm:exact")] >= ee[(12, "harm:noisy")]

    def test_centralized_beats_hybrid(self, run_preset) -> None:
        """Test mean TURA EE at least mean HARM EE at 30 Mbit/s."""
        # Arrange
        data = {
            "sweep": {"name": "num_users", "values": [9, 15]},
            "modes": ["tura", "harm"],
            "variants": [{"name": "b30", "scenario": {"fronthaul_cap_mbps": 30}}],
        }

        # Act
        ee = means(run_preset("fig9", data), "ee_mean")

        # Assert
        for users in (9, 15):
            assert ee[(users, "tura:b30")] >= ee[(users, "harm:b30")]

    def test_signaling_power_discourages_offloading(self, run_preset) -> None:
        """Test offloading nonincreasing in the signaling power."""
        result = run_preset("fig7", {})

        offload = [a.offload_mean for a in result.aggregates]
        assert all(later <= earlier for earlier, later in zip(offload, offload[1:]))
