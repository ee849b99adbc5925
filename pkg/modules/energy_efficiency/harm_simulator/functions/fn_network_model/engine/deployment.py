"""
Deployment Generation

Builds one Monte Carlo drop of the small-cell network: RSCs on a regular grid
filling the square coverage area, users dropped uniformly with rejection
sampling around the RSCs, LoS/NLoS pathloss, unit-mean exponential (Rayleigh
power) fading per subchannel, and the max-RSRP initial association.

Features:
- Regular grid layout with walls on the internal grid lines
- LoS iff a link crosses no wall, NLoS otherwise (or forced by config)
- Deterministic per-seed placement and fading streams
- Hand-built deployments from explicit gains for small test instances
- Centralized view that merges every group into a single C-RAN
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ...shared.errors import GeometryError
from ...shared.logger import SimulationLogger
from ...shared.rng import derive_rng
from ..config import LineOfSight, ScenarioParams
from ..utils.DataStructures import Deployment

_PLACEMENT_STREAM = 0
_FADING_STREAM = 1


def pathloss_los_db(distance: np.ndarray | float, offset_db: float = 174.32) -> np.ndarray:
    return 18.7 * np.log10(distance) + 46.8 + offset_db


def pathloss_nlos_db(
    distance: np.ndarray | float, num_walls: np.ndarray | int, offset_db: float = 174.32
) -> np.ndarray:
    return 36.8 * np.log10(distance) + 43.8 + offset_db + 5.0 * (np.asarray(num_walls) - 1)


def grid_shape(num_rscs: int) -> tuple[int, int]:
    """(columns, rows) of the smallest near-square grid holding num_rscs cells."""
    cols = math.ceil(math.sqrt(num_rscs))
    rows = math.ceil(num_rscs / cols)
    return cols, rows


def grid_layout(num_rscs: int, side: float) -> np.ndarray:
    """RSC coordinates at the centres of a cols x rows grid covering the square, row-major."""
    cols, rows = grid_shape(num_rscs)
    cell_w, cell_h = side / cols, side / rows
    index = np.arange(num_rscs)
    x = (index % cols + 0.5) * cell_w
    y = (index // cols + 0.5) * cell_h
    return np.stack([x, y], axis=1)


def count_grid_walls(
    rsc_xy: np.ndarray, user_xy: np.ndarray, num_rscs: int, side: float
) -> np.ndarray:
    """
    Number of internal grid lines crossed by every RSC-user segment.

    Args:
        rsc_xy: (M, 2) RSC coordinates
        user_xy: (K, 2) user coordinates
        num_rscs: number of RSCs the grid was built for
        side: coverage side length

    Returns:
        (M, K) integer wall counts
    """
    cols, rows = grid_shape(num_rscs)
    v_lines = np.arange(1, cols) * side / cols
    h_lines = np.arange(1, rows) * side / rows

    def crossings(a: np.ndarray, b: np.ndarray, lines: np.ndarray) -> np.ndarray:
        lo = np.minimum(a[:, None], b[None, :])
        hi = np.maximum(a[:, None], b[None, :])
        return ((lines[None, None, :] > lo[..., None]) & (lines[None, None, :] < hi[..., None])).sum(axis=-1)

    return crossings(rsc_xy[:, 0], user_xy[:, 0], v_lines) + crossings(rsc_xy[:, 1], user_xy[:, 1], h_lines)


def place_users(params: ScenarioParams, rsc_xy: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform user positions honoring the minimum RSC distance, by bounded rejection sampling."""
    users = np.empty((params.num_users, 2))
    for k in range(params.num_users):
        for _ in range(params.placement_retries):
            candidate = rng.uniform(0.0, params.area_side, size=2)
            if np.min(np.linalg.norm(rsc_xy - candidate, axis=1)) >= params.min_rsc_user_distance:
                users[k] = candidate
                break
        else:
            raise GeometryError(
                f"Could not place user {k} at least {params.min_rsc_user_distance} m from every RSC "
                f"in a {params.area_side} m square after {params.placement_retries} attempts"
            )
    return users


def initial_association(gains: np.ndarray, reference_power: float) -> np.ndarray:
    """Max-RSRP association; RSRP is the received power summed over subchannels, ties to the lowest RSC."""
    num_groups, num_rscs, num_users, _ = gains.shape
    rsrp = reference_power * gains.sum(axis=3).reshape(num_groups * num_rscs, num_users)
    best = np.argmax(rsrp, axis=0)
    assoc = np.zeros((num_groups * num_rscs, num_users))
    assoc[best, np.arange(num_users)] = 1.0
    return assoc.reshape(num_groups, num_rscs, num_users)


def generate_deployment(
    params: ScenarioParams,
    seed: Optional[int] = None,
    logger: Optional[SimulationLogger] = None,
) -> Deployment:
    """
    Generate one drop from ``params``.

    Args:
        params: scenario constants
        seed: drop seed, defaults to params.rng_seed

    Returns:
        Deployment with geometry, gains and initial association

    Raises:
        GeometryError: users cannot be placed under the minimum distance
    """
    seed = params.rng_seed if seed is None else seed
    C, S, K, N = params.num_groups, params.num_rscs_per_group, params.num_users, params.num_subchannels

    rsc_xy = grid_layout(params.num_rscs, params.area_side)
    user_xy = place_users(params, rsc_xy, derive_rng(seed, _PLACEMENT_STREAM))

    distances = np.linalg.norm(rsc_xy[:, None, :] - user_xy[None, :, :], axis=-1)
    if params.line_of_sight == LineOfSight.GRID:
        walls = count_grid_walls(rsc_xy, user_xy, params.num_rscs, params.area_side)
        los = walls == 0
    elif params.line_of_sight == LineOfSight.ALL_LOS:
        walls = np.zeros_like(distances, dtype=int)
        los = np.ones_like(distances, dtype=bool)
    else:
        walls = np.full(distances.shape, params.num_walls, dtype=int)
        los = np.zeros_like(distances, dtype=bool)

    pathloss = np.where(
        los,
        pathloss_los_db(distances, params.pathloss_offset_db),
        pathloss_nlos_db(distances, np.maximum(walls, 1), params.pathloss_offset_db),
    )
    fading = derive_rng(seed, _FADING_STREAM).exponential(1.0, size=(params.num_rscs, K, N))
    gains = 10.0 ** (-pathloss / 10.0)[..., None] * fading

    depl = Deployment(
        params=params,
        rsc_pos=rsc_xy.reshape(C, S, 2),
        user_pos=user_xy,
        distances=distances.reshape(C, S, K),
        walls=walls.reshape(C, S, K),
        line_of_sight=los.reshape(C, S, K),
        pathloss_db=pathloss.reshape(C, S, K),
        gains=gains.reshape(C, S, K, N),
        initial_assoc=initial_association(gains.reshape(C, S, K, N), params.max_tx_power),
    )
    if logger:
        logger.verbose(
            "DEBUG",
            f"Deployment seed={seed}: {C}x{S} RSCs, {K} users, {int(los.sum())}/{los.size} LoS links",
        )
    return depl


def build_deployment(
    params: ScenarioParams,
    gains: np.ndarray,
    rsc_pos: Optional[np.ndarray] = None,
    user_pos: Optional[np.ndarray] = None,
    initial_assoc: Optional[np.ndarray] = None,
) -> Deployment:
    """
    Deployment from explicit (C, S, K, N) gains, for hand-built instances.

    Positions default to the grid layout and the origin; the initial association
    defaults to max-RSRP over the given gains.
    """
    gains = np.asarray(gains, dtype=float)
    expected = (params.num_groups, params.num_rscs_per_group, params.num_users, params.num_subchannels)
    if gains.shape != expected:
        raise ValueError(f"gains shape {gains.shape} does not match scenario {expected}")
    if np.any(gains <= 0):
        raise ValueError("gains must be strictly positive")
    C, S, K, _ = gains.shape
    rsc_pos = grid_layout(C * S, params.area_side).reshape(C, S, 2) if rsc_pos is None else np.asarray(rsc_pos)
    user_pos = np.zeros((K, 2)) if user_pos is None else np.asarray(user_pos)
    distances = np.linalg.norm(rsc_pos.reshape(C * S, 1, 2) - user_pos[None, :, :], axis=-1).reshape(C, S, K)
    if initial_assoc is None:
        initial_assoc = initial_association(gains, params.max_tx_power)
    return Deployment(
        params=params,
        rsc_pos=rsc_pos,
        user_pos=user_pos,
        distances=distances,
        walls=np.zeros((C, S, K), dtype=int),
        line_of_sight=np.ones((C, S, K), dtype=bool),
        pathloss_db=-10.0 * np.log10(gains.mean(axis=3)),
        gains=gains,
        initial_assoc=initial_assoc,
    )


def centralize(depl: Deployment) -> Deployment:
    """View the whole network as one C-RAN: every RSC under a single CSC, same physical drop."""
    if depl.num_groups == 1:
        return depl
    C, S, K, N = depl.shape
    params = depl.params.with_overrides(num_groups=1, num_rscs_per_group=C * S)
    return Deployment(
        params=params,
        rsc_pos=depl.rsc_pos.reshape(1, C * S, 2),
        user_pos=depl.user_pos,
        distances=depl.distances.reshape(1, C * S, K),
        walls=depl.walls.reshape(1, C * S, K),
        line_of_sight=depl.line_of_sight.reshape(1, C * S, K),
        pathloss_db=depl.pathloss_db.reshape(1, C * S, K),
        gains=depl.gains.reshape(1, C * S, K, N),
        initial_assoc=depl.initial_assoc.reshape(1, C * S, K),
    )
