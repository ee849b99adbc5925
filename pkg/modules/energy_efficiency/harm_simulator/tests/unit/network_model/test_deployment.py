"""
Unit tests for deployment generation: pathloss, grid geometry, placement,
fading and the max-RSRP initial association.
"""

import numpy as np
import pytest

from modules.energy_efficiency.harm_simulator.functions.fn_network_model.config import (
    LineOfSight,
    ScenarioParams,
)
from modules.energy_efficiency.harm_simulator.functions.fn_network_model.engine.deployment import (
    build_deployment,
    centralize,
    count_grid_walls,
    generate_deployment,
    grid_layout,
    grid_shape,
    pathloss_los_db,
    pathloss_nlos_db,
)
from modules.energy_efficiency.harm_simulator.functions.shared.errors import GeometryError


@pytest.fixture
def small_params() -> ScenarioParams:
    return ScenarioParams(num_rscs_per_group=4, num_users=6, num_subchannels=3, area_side=40.0)


class TestPathloss:
    """Test the LoS and NLoS pathloss formulas."""

    def test_los_at_ten_metres(self) -> None:
        """Test LoS pathloss at 10 m with the default offset."""
        assert pathloss_los_db(10.0) == pytest.approx(239.82)

    def test_nlos_at_ten_metres_one_wall(self) -> None:
        """Test NLoS pathloss at 10 m through one wall."""
        assert pathloss_nlos_db(10.0, 1) == pytest.approx(254.92)

    def test_each_extra_wall_adds_five_db(self) -> None:
        """Test the per-wall penetration loss."""
        assert pathloss_nlos_db(10.0, 3) - pathloss_nlos_db(10.0, 1) == pytest.approx(10.0)

    def test_offset_is_additive(self) -> None:
        """Test that the offset shifts both formulas by the same amount."""
        assert pathloss_los_db(25.0, 174.32) - pathloss_los_db(25.0, 0.0) == pytest.approx(174.32)
        assert pathloss_nlos_db(25.0, 2, 174.32) - pathloss_nlos_db(25.0, 2, 0.0) == pytest.approx(174.32)


class TestGridGeometry:
    """Test the RSC grid and wall counting."""

    def test_grid_shape_is_near_square(self) -> None:
        """Test grid dimensions for several RSC counts."""
        assert grid_shape(1) == (1, 1)
        assert grid_shape(4) == (2, 2)
        assert grid_shape(6) == (3, 2)

    def test_rscs_sit_at_cell_centres(self) -> None:
        """Test the row-major cell-centre layout."""
        # Act
        layout = grid_layout(6, 90.0)

        # Assert
        assert layout.shape == (6, 2)
        np.testing.assert_allclose(layout[0], [15.0, 22.5])
        np.testing.assert_allclose(layout[5], [75.0, 67.5])

    def test_wall_counts(self) -> None:
        """Test walls crossed by segments in a 2x2 grid of a 60 m square."""
        # Arrange
        rsc = np.array([[15.0, 15.0]])
        users = np.array([[20.0, 20.0], [45.0, 15.0], [45.0, 45.0]])

        # Act
        walls = count_grid_walls(rsc, users, num_rscs=4, side=60.0)

        # Assert
        np.testing.assert_array_equal(walls, [[0, 1, 2]])


class TestGenerateDeployment:
    """Test random drops."""

    def test_identical_seed_gives_identical_deployment(self, small_params: ScenarioParams) -> None:
        """Test determinism of placement and fading."""
        # Act
        first = generate_deployment(small_params, seed=11)
        second = generate_deployment(small_params, seed=11)

        # Assert
        np.testing.assert_array_equal(first.user_pos, second.user_pos)
        np.testing.assert_array_equal(first.gains, second.gains)
        np.testing.assert_array_equal(first.initial_assoc, second.initial_assoc)

    def test_different_seeds_give_different_drops(self, small_params: ScenarioParams) -> None:
        """Test that the seed actually drives the drop."""
        first = generate_deployment(small_params, seed=1)
        second = generate_deployment(small_params, seed=2)

        assert not np.array_equal(first.user_pos, second.user_pos)

    def test_default_seed_comes_from_params(self, small_params: ScenarioParams) -> None:
        """Test that params.rng_seed is used when no seed is given."""
        params = small_params.with_overrides(rng_seed=5)

        np.testing.assert_array_equal(
            generate_deployment(params).gains, generate_deployment(params, seed=5).gains
        )

    def test_invariants(self, small_params: ScenarioParams) -> None:
        """Test minimum distance, one initial association per user and positive gains."""
        # Act
        depl = generate_deployment(small_params, seed=3)

        # Assert
        assert depl.shape == (1, 4, 6, 3)
        assert np.all(depl.distances >= small_params.min_rsc_user_distance)
        np.testing.assert_array_equal(depl.initial_assoc.sum(axis=(0, 1)), np.ones(6))
        assert np.all(depl.gains > 0)
        assert np.all((depl.user_pos >= 0) & (depl.user_pos <= small_params.area_side))

    def test_initial_association_is_max_rsrp(self, small_params: ScenarioParams) -> None:
        """Test that every user starts on the RSC with the largest received power."""
        depl = generate_deployment(small_params, seed=4)

        rsrp = depl.gains.sum(axis=3).reshape(-1, depl.num_users)
        np.testing.assert_array_equal(depl.initial_rsc, np.argmax(rsrp, axis=0))

    def test_grid_rule_uses_los_formula_without_walls(self, small_params: ScenarioParams) -> None:
        """Test that LoS links use the LoS formula and NLoS links the wall-count formula."""
        # Act
        depl = generate_deployment(small_params, seed=8)
        los = depl.line_of_sight
        offset = small_params.pathloss_offset_db

        # Assert
        np.testing.assert_array_equal(los, depl.walls == 0)
        np.testing.assert_allclose(depl.pathloss_db[los], pathloss_los_db(depl.distances[los], offset))
        np.testing.assert_allclose(
            depl.pathloss_db[~los], pathloss_nlos_db(depl.distances[~los], depl.walls[~los], offset)
        )

    def test_forced_line_of_sight_rules(self, small_params: ScenarioParams) -> None:
        """Test the all-LoS and all-NLoS overrides."""
        # Act
        all_los = generate_deployment(small_params.with_overrides(line_of_sight=LineOfSight.ALL_LOS), seed=2)
        all_nlos = generate_deployment(
            small_params.with_overrides(line_of_sight=LineOfSight.ALL_NLOS, num_walls=3), seed=2
        )

        # Assert
        assert all_los.line_of_sight.all()
        assert not all_nlos.line_of_sight.any()
        assert np.all(all_nlos.walls == 3)

    def test_deployment_arrays_are_read_only(self, small_params: ScenarioParams) -> None:
        """Test that drops can be shared between workers without copies."""
        depl = generate_deployment(small_params, seed=1)

        with pytest.raises(ValueError):
            depl.gains[0, 0, 0, 0] = 1.0

    def test_unplaceable_users_raise_geometry_error(self) -> None:
        """Test bounded rejection sampling when no point is far enough from the RSC."""
        params = ScenarioParams(
            num_rscs_per_group=1,
            num_users=1,
            area_side=1.0,
            min_rsc_user_distance=5.0,
            placement_retries=10,
        )

        with pytest.raises(GeometryError):
            generate_deployment(params, seed=0)


class TestBuildDeployment:
    """Test hand-built deployments."""

    def test_user_goes_to_stronger_rsc(self) -> None:
        """Test that the higher-gain RSC becomes the initial association."""
        # Arrange
        params = ScenarioParams(num_rscs_per_group=2, num_users=1, num_subchannels=2)
        gains = np.array([[[[1e-10, 1e-10]], [[1e-9, 1e-9]]]])

        # Act
        depl = build_deployment(params, gains)

        # Assert
        np.testing.assert_array_equal(depl.initial_assoc[0, :, 0], [0.0, 1.0])
        assert depl.initial_rsc[0] == 1

    def test_rejects_wrong_shape(self) -> None:
        """Test shape validation of explicit gains."""
        params = ScenarioParams(num_rscs_per_group=2, num_users=1, num_subchannels=2)

        with pytest.raises(ValueError):
            build_deployment(params, np.ones((1, 2, 2, 2)))

    def test_rejects_non_positive_gains(self) -> None:
        """Test that zero gains are refused."""
        params = ScenarioParams(num_rscs_per_group=1, num_users=1, num_subchannels=1)

        with pytest.raises(ValueError):
            build_deployment(params, np.zeros((1, 1, 1, 1)))


class TestCentralize:
    """Test the single-C-RAN view of a drop."""

    def test_merges_groups(self) -> None:
        """Test that groups are flattened into one group without touching the channel."""
        # Arrange
        params = ScenarioParams(num_groups=3, num_rscs_per_group=2, num_users=5, num_subchannels=2, area_side=60.0)
        depl = generate_deployment(params, seed=9)

        # Act
        central = centralize(depl)

        # Assert
        assert central.shape == (1, 6, 5, 2)
        assert central.params.num_groups == 1
        assert central.params.num_rscs_per_group == 6
        np.testing.assert_array_equal(central.gains.reshape(depl.shape), depl.gains)
        np.testing.assert_array_equal(central.initial_rsc, depl.initial_rsc)

    def test_single_group_is_unchanged(self, small_params: ScenarioParams) -> None:
        """Test that a one-group drop is returned as is."""
        depl = generate_deployment(small_params, seed=1)

        assert centralize(depl) is depl
