"""
Unit tests for the radio and power model: interference, SINR, rates,
power composition, energy efficiency and constraint evaluation.
"""

import numpy as np
import pytest

from modules.energy_efficiency.harm_simulator.functions.fn_network_model.config import ScenarioParams
from modules.energy_efficiency.harm_simulator.functions.fn_network_model.engine.radio_model import (
    aggregate_ee,
    check_constraints,
    group_ee,
    group_rate,
    interference,
    interference_field,
    network_ee,
    power_breakdown,
    rate,
    rsc_rates,
    shannon_rate,
    sinr,
    user_rates,
)
from modules.energy_efficiency.harm_simulator.functions.fn_network_model.utils.DataStructures import (
    Allocation,
    InterferenceMode,
)
from modules.energy_efficiency.harm_simulator.functions.shared.units import dbm_to_watt

G = 1e-9


def link_rate(params: ScenarioParams, power: float, gain: float = G, interference_w: float = 0.0) -> float:
    return params.subchannel_bandwidth * np.log2(1.0 + power * gain / (interference_w + params.noise_floor))


class TestInterference:
    """Test the interference seen by a target link."""

    def test_single_link_sees_no_interference(self, deployment_factory, allocation_factory) -> None:
        """Test a one-RSC, one-user network."""
        # Arrange
        params = ScenarioParams(num_rscs_per_group=1, num_users=1, num_subchannels=1)
        depl = deployment_factory(params)
        alloc = allocation_factory(depl, [(0, 0, 0, 0, 0.1)])

        # Act & Assert
        assert interference(depl, alloc, (0, 0, 0, 0)) == 0.0

    def test_cross_term_from_other_rsc(self, deployment_factory, allocation_factory) -> None:
        """Test two RSCs serving two users on the same subchannel at 0.1 W and 0.2 W."""
        # Arrange
        params = ScenarioParams(num_rscs_per_group=2, num_users=2, num_subchannels=1)
        depl = deployment_factory(params)
        alloc = allocation_factory(depl, [(0, 0, 0, 0, 0.1), (0, 1, 1, 0, 0.2)])

        # Act
        at_user0 = interference(depl, alloc, (0, 0, 0, 0))
        at_user1 = interference(depl, alloc, (0, 1, 1, 0))

        # Assert
        assert at_user0 == pytest.approx(0.2 * G)
        assert at_user1 == pytest.approx(0.1 * G)

    def test_other_subchannels_do_not_interfere(self, tiny_deployment, allocation_factory) -> None:
        """Test that transmissions on subchannel 1 leave subchannel 0 clean."""
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05), (0, 1, 1, 1, 0.05)])

        assert interference(tiny_deployment, alloc, (0, 0, 0, 0)) == 0.0

    def test_estimated_mode_with_true_powers_equals_exact(self, two_group_deployment, allocation_factory) -> None:
        """Test that believed powers equal to the true ones reproduce exact interference."""
        # Arrange
        alloc = allocation_factory(two_group_deployment, [(0, 0, 0, 0, 0.05), (1, 0, 1, 0, 0.05)])

        # Act & Assert
        for c in range(2):
            exact = interference_field(two_group_deployment, alloc, c)
            estimated = interference_field(
                two_group_deployment, alloc, c, InterferenceMode.ESTIMATED, alloc.effective_power
            )
            np.testing.assert_allclose(estimated, exact)

    def test_estimated_mode_uses_believed_powers(self, two_group_deployment, allocation_factory) -> None:
        """Test that stale beliefs change the inter-group term only."""
        # Arrange
        alloc = allocation_factory(two_group_deployment, [(0, 0, 0, 0, 0.05), (1, 0, 1, 0, 0.05)])
        believed = np.zeros(alloc.shape)
        believed[1, 0, 1, 0] = 0.1

        # Act
        value = interference(two_group_deployment, alloc, (0, 0, 0, 0), InterferenceMode.ESTIMATED, believed)

        # Assert
        assert value == pytest.approx(0.1 * G / 100)

    def test_estimated_mode_requires_foreign_power(self, two_group_deployment, allocation_factory) -> None:
        """Test that estimated mode without beliefs is refused."""
        alloc = allocation_factory(two_group_deployment, [(0, 0, 0, 0, 0.05)])

        with pytest.raises(ValueError):
            interference(two_group_deployment, alloc, (0, 0, 0, 0), InterferenceMode.ESTIMATED)


class TestSinrAndRate:
    """Test SINR and Shannon rates."""

    def test_noise_floor(self) -> None:
        """Test N0*W at -174 dBm/Hz over 360 kHz."""
        assert ScenarioParams().noise_floor == pytest.approx(1.433e-15, rel=1e-3)

    def test_zero_power_gives_zero_sinr(self, tiny_deployment) -> None:
        """Test an empty allocation."""
        alloc = Allocation.for_deployment(tiny_deployment)

        assert sinr(tiny_deployment, alloc, (0, 0, 0, 0)) == 0.0
        assert rate(tiny_deployment, alloc, (0, 0, 0, 0)) == 0.0

    def test_unit_sinr_gives_one_bit_per_hertz(self, deployment_factory, allocation_factory) -> None:
        """Test p*g = N0*W without interference."""
        # Arrange
        params = ScenarioParams(num_rscs_per_group=1, num_users=1, num_subchannels=1)
        gain = 1e-12
        depl = deployment_factory(params, gain=gain)
        alloc = allocation_factory(depl, [(0, 0, 0, 0, params.noise_floor / gain)])

        # Act & Assert
        assert sinr(depl, alloc, (0, 0, 0, 0)) == pytest.approx(1.0)
        assert rate(depl, alloc, (0, 0, 0, 0)) == pytest.approx(360e3)

    def test_shannon_rate_examples(self) -> None:
        """Test W*log2(1 + SINR) at SINR 0, 1 and 3."""
        assert shannon_rate(0.0, 360e3) == 0.0
        assert shannon_rate(1.0, 360e3) == pytest.approx(360e3)
        assert shannon_rate(3.0, 360e3) == pytest.approx(720e3)


class TestRates:
    """Test group, user and RSC rates."""

    def test_empty_allocation_has_zero_rate(self, tiny_deployment) -> None:
        """Test that nothing assigned means nothing delivered."""
        assert group_rate(tiny_deployment, Allocation.for_deployment(tiny_deployment), 0) == 0.0

    def test_single_link_rate(self, tiny_deployment, allocation_factory) -> None:
        """Test that one user on one subchannel delivers exactly its link rate."""
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 1, 0.05)])

        assert group_rate(tiny_deployment, alloc, 0) == pytest.approx(rate(tiny_deployment, alloc, (0, 0, 0, 1)))

    def test_two_users_on_disjoint_subchannels(self, tiny_deployment, allocation_factory) -> None:
        """Test the sum of two hand-computed interference-free rates."""
        # Arrange
        params = tiny_deployment.params
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05), (0, 0, 1, 1, 0.03)])
        expected = link_rate(params, 0.05) + link_rate(params, 0.03)

        # Act & Assert
        assert group_rate(tiny_deployment, alloc, 0) == pytest.approx(expected)
        np.testing.assert_allclose(user_rates(tiny_deployment, alloc), [link_rate(params, 0.05), link_rate(params, 0.03)])
        np.testing.assert_allclose(rsc_rates(tiny_deployment, alloc), [[expected, 0.0]])

    def test_co_channel_users_interfere(self, tiny_deployment, allocation_factory) -> None:
        """Test rates of two RSCs reusing one subchannel."""
        # Arrange
        params = tiny_deployment.params
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05), (0, 1, 1, 0, 0.05)])
        expected = 2 * link_rate(params, 0.05, interference_w=0.05 * G)

        # Act & Assert
        assert group_rate(tiny_deployment, alloc, 0) == pytest.approx(expected)


class TestPowerModel:
    """Test the per-RSC power composition."""

    def test_sleeping_rsc_draws_sleep_power(self, tiny_deployment, allocation_factory) -> None:
        """Test that an RSC without users contributes 4.3 W."""
        # Arrange
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05)])

        # Act
        breakdown = power_breakdown(tiny_deployment.params, alloc, tiny_deployment.initial_assoc)

        # Assert
        np.testing.assert_array_equal(breakdown.active, [[True, False]])
        assert breakdown.circuit[0, 1] == pytest.approx(4.3)
        assert breakdown.total == pytest.approx(0.05 + 6.8 + 4.3)

    def test_user_on_initial_rsc_has_no_overhead(self, tiny_deployment, allocation_factory) -> None:
        """Test that keeping the max-RSRP association costs no signaling power."""
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05), (0, 0, 1, 1, 0.05)])

        breakdown = power_breakdown(tiny_deployment.params, alloc, tiny_deployment.initial_assoc)

        np.testing.assert_array_equal(breakdown.tc_overhead, [[0.0, 0.0]])

    def test_offloaded_user_adds_signaling_overhead(self, tiny_deployment, allocation_factory) -> None:
        """Test the 1 dBm overhead of a user moved to RSC 1."""
        # Arrange
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05), (0, 1, 1, 1, 0.05)])

        # Act
        breakdown = power_breakdown(tiny_deployment.params, alloc, tiny_deployment.initial_assoc)

        # Assert
        assert breakdown.tc_overhead[0, 1] == pytest.approx(1.259e-3, rel=1e-3)
        assert breakdown.tc_overhead[0, 1] == pytest.approx(dbm_to_watt(1.0))
        assert breakdown.tc_overhead[0, 0] == 0.0

    def test_always_on_never_draws_less(self, tiny_deployment, allocation_factory) -> None:
        """Test that disabling sleep mode cannot lower the power of one allocation."""
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05)])

        with_sleep = power_breakdown(tiny_deployment.params, alloc, tiny_deployment.initial_assoc, True)
        always_on = power_breakdown(tiny_deployment.params, alloc, tiny_deployment.initial_assoc, False)

        assert with_sleep.total <= always_on.total
        assert always_on.total == pytest.approx(0.05 + 2 * 6.8)


class TestEnergyEfficiency:
    """Test group, network and aggregate EE."""

    def test_zero_rate_gives_zero_ee(self, tiny_deployment) -> None:
        """Test an empty allocation."""
        assert group_ee(tiny_deployment, Allocation.for_deployment(tiny_deployment), 0) == 0.0

    def test_ten_megabit_over_ten_watt(self, deployment_factory, allocation_factory) -> None:
        """Test R = 1e7 bit/s over P = 10 W."""
        # Arrange
        params = ScenarioParams(
            num_rscs_per_group=1,
            num_users=1,
            num_subchannels=1,
            subchannel_bandwidth=1e7,
            circuit_active=9.9,
        )
        gain = params.noise_floor / 0.1
        depl = deployment_factory(params, gain=gain)
        alloc = allocation_factory(depl, [(0, 0, 0, 0, 0.1)])

        # Act & Assert
        assert group_ee(depl, alloc, 0) == pytest.approx(1e6)

    def test_network_and_aggregate_agree_for_one_group(self, tiny_deployment, allocation_factory) -> None:
        """Test that with one group the sum of group EEs is the aggregate EE."""
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.05), (0, 1, 1, 1, 0.05)])

        assert network_ee(tiny_deployment, alloc) == pytest.approx(aggregate_ee(tiny_deployment, alloc))


class TestCheckConstraints:
    """Test constraint evaluation."""

    def test_empty_allocation_violates_rates_only(self, tiny_deployment) -> None:
        """Test the all-zero allocation with a positive minimum rate."""
        # Act
        report = check_constraints(tiny_deployment.params, tiny_deployment, Allocation.for_deployment(tiny_deployment))

        # Assert
        violated = {name for name, value in report.violations().items() if value > 0}
        assert violated == {"min_rate"}
        assert report.violations()["min_rate"] == pytest.approx(1e6)
        assert not report.feasible

    def test_feasible_hand_built_instance(self, tiny_deployment, allocation_factory) -> None:
        """Test that every magnitude is zero on a feasible allocation."""
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.04), (0, 0, 1, 1, 0.04)])

        report = check_constraints(tiny_deployment.params, tiny_deployment, alloc)

        assert report.feasible
        assert all(value == 0.0 for value in report.violations().values())

    def test_transmit_power_excess(self, tiny_deployment, allocation_factory) -> None:
        """Test P_tx = P_max + 0.01 W."""
        # Arrange
        p_max = tiny_deployment.params.max_tx_power
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, p_max + 0.01), (0, 1, 1, 1, 0.05)])

        # Act
        report = check_constraints(tiny_deployment.params, tiny_deployment, alloc)

        # Assert
        assert report.tx_power[0, 0] == pytest.approx(0.01)
        assert report.tx_power[0, 1] == 0.0

    def test_power_bounds(self, tiny_deployment, allocation_factory) -> None:
        """Test per-subchannel group power bounds."""
        # Arrange
        alloc = allocation_factory(tiny_deployment, [(0, 0, 0, 0, 0.04), (0, 0, 1, 1, 0.04)])
        bounds = np.array([[0.02, 0.1]])

        # Act
        report = check_constraints(tiny_deployment.params, tiny_deployment, alloc, bounds)

        # Assert
        np.testing.assert_allclose(report.power_bounds, [[0.02, 0.0]])
        assert not report.feasible

    def test_fronthaul_only_when_limited(self, deployment_factory, allocation_factory) -> None:
        """Test that the fronthaul constraint can be switched off."""
        # Arrange
        params = ScenarioParams(
            num_rscs_per_group=1, num_users=1, num_subchannels=1, min_rate=1e5, fronthaul_cap=(1e6,)
        )
        depl = deployment_factory(params)
        alloc = allocation_factory(depl, [(0, 0, 0, 0, 0.05)])

        # Act
        limited = check_constraints(params, depl, alloc)
        unlimited = check_constraints(params, depl, alloc, fronthaul_limited=False)

        # Assert
        assert limited.fronthaul[0, 0] > 0
        assert unlimited.fronthaul[0, 0] == 0.0
        assert unlimited.feasible

    def test_structural_violations(self, tiny_deployment) -> None:
        """Test double association and shared subchannels."""
        # Arrange
        assoc = np.ones((1, 2, 2))
        subch = np.zeros((1, 2, 2, 2))
        subch[0, 0, :, 0] = 1.0
        alloc = Allocation(assoc, subch, np.zeros((1, 2, 2, 2)))

        # Act
        report = check_constraints(tiny_deployment.params, tiny_deployment, alloc)

        # Assert
        np.testing.assert_array_equal(report.association, [[1.0, 1.0]])
        assert report.subchannel_exclusivity[0, 0, 0] == 1.0

    def test_group_scope_ignores_other_groups(self, two_group_deployment, allocation_factory) -> None:
        """Test that a one-group allocation is feasible within its group and not network-wide."""
        # Arrange
        alloc = allocation_factory(two_group_deployment, [(0, 0, 0, 0, 0.05)])
        params = two_group_deployment.params

        # Act
        network = check_constraints(params, two_group_deployment, alloc)
        own = check_constraints(params, two_group_deployment, alloc, group=0)
        other = check_constraints(params, two_group_deployment, alloc, group=1)

        # Assert
        np.testing.assert_array_equal(network.min_rate, [0.0, 1e6])
        assert not network.feasible
        assert own.feasible
        np.testing.assert_array_equal(other.min_rate, [0.0, 1e6])
        assert not other.feasible

    def test_group_scope_keeps_own_violations(self, two_group_deployment, allocation_factory) -> None:
        """Test that violations of the scoped group survive and the rest are zeroed."""
        # Arrange
        p_max = two_group_deployment.params.max_tx_power
        alloc = allocation_factory(two_group_deployment, [(0, 0, 0, 0, 0.05), (1, 0, 1, 1, p_max + 0.01)])

        # Act
        report = check_constraints(two_group_deployment.params, two_group_deployment, alloc, group=1)

        # Assert
        np.testing.assert_allclose(report.tx_power, [[0.0], [0.01]])
        assert report.violations()["tx_power"] == pytest.approx(0.01)
        assert not report.feasible

    def test_group_scope_out_of_range(self, two_group_deployment) -> None:
        """Test that an unknown group is refused."""
        alloc = Allocation.for_deployment(two_group_deployment)

        with pytest.raises(ValueError, match="out of range"):
            check_constraints(two_group_deployment.params, two_group_deployment, alloc, group=2)


class TestAllocation:
    """Test the allocation container."""

    def test_inconsistent_shapes_are_refused(self) -> None:
        """Test shape validation."""
        with pytest.raises(ValueError):
            Allocation(np.zeros((1, 1, 1)), np.zeros((1, 1, 1, 2)), np.zeros((1, 1, 1, 3)))

    def test_serving_rsc(self, tiny_deployment, allocation_factory) -> None:
        """Test the flat serving-RSC index, -1 for unassociated users."""
        alloc = allocation_factory(tiny_deployment, [(0, 1, 0, 0, 0.05)])

        np.testing.assert_array_equal(alloc.serving_rsc(), [1, -1])

    def test_with_group_replaces_one_slice(self, two_group_deployment, allocation_factory) -> None:
        """Test that other groups are left untouched."""
        # Arrange
        alloc = allocation_factory(two_group_deployment, [(0, 0, 0, 0, 0.05), (1, 0, 1, 1, 0.05)])
        empty = Allocation.for_deployment(two_group_deployment)

        # Act
        merged = empty.with_group(1, *alloc.group(1))

        # Assert
        np.testing.assert_array_equal(merged.power[1], alloc.power[1])
        assert merged.power[0].sum() == 0.0
