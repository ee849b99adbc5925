"""
CRC action spaces.

A CSC's action gives every associated (RSC, user) link either no subchannel
or one subchannel at one of L discrete power levels l*P_max/L. Actions that
put two users of one RSC on the same subchannel, or exceed an RSC's power
budget, are not part of the space.
"""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from ...fn_network_model.config import ScenarioParams
from ...fn_network_model.utils.DataStructures import Allocation, Deployment
from ..utils.DataStructures import ActionSpace


def level_powers(params: ScenarioParams) -> np.ndarray:
    """Power of every level, index 0 being the no-assignment choice."""
    return np.concatenate([[0.0], params.power_level_values])


def associated_links(assoc_c: np.ndarray) -> np.ndarray:
    """(Lk, 2) (s, k) pairs with assoc = 1, ordered by user then RSC."""
    s_idx, k_idx = np.nonzero(np.asarray(assoc_c) > 0.5)
    order = np.lexsort((s_idx, k_idx))
    return np.stack([s_idx[order], k_idx[order]], axis=1).astype(int)


def is_valid_action(
    subchannels: np.ndarray, levels: np.ndarray, links: np.ndarray, level_budget: int
) -> bool:
    """Per-RSC subchannel exclusivity and sum of levels within L (i.e. power within P_max)."""
    for s in np.unique(links[:, 0]):
        on_rsc = links[:, 0] == s
        used = subchannels[on_rsc]
        used = used[used >= 0]
        if used.size != np.unique(used).size:
            return False
        if levels[on_rsc].sum() > level_budget:
            return False
    return True


def project_incumbent(
    params: ScenarioParams, links: np.ndarray, allocation: Allocation, c: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Action closest to a continuous allocation: each link keeps its
    highest-power subchannel at the nearest level, then the largest levels on
    an over-budget RSC are lowered until the budget holds.
    """
    L = params.power_levels
    step = params.max_tx_power / L
    effective = allocation.effective_power[c]
    subchannels = np.full(len(links), -1, dtype=int)
    levels = np.zeros(len(links), dtype=int)
    for j, (s, k) in enumerate(links):
        per_n = effective[s, k]
        if per_n.size == 0 or per_n.max() <= 0:
            continue
        n = int(np.argmax(per_n))
        subchannels[j] = n
        levels[j] = int(np.clip(np.rint(per_n[n] / step), 1, L))

    for s in np.unique(links[:, 0]) if len(links) else []:
        on_rsc = np.flatnonzero(links[:, 0] == s)
        while levels[on_rsc].sum() > L:
            j = on_rsc[np.argmax(levels[on_rsc])]
            levels[j] -= 1
            if levels[j] == 0:
                subchannels[j] = -1
    return subchannels, levels


def build_action_space(
    params: ScenarioParams,
    depl: Deployment,
    assoc_c: np.ndarray,
    c: int,
    incumbent: Optional[Allocation] = None,
    cap: int = 512,
    rng: Optional[np.random.Generator] = None,
    mutation_rate: float = 0.5,
) -> ActionSpace:
    """
    Enumerate the CSC's joint actions, or sample at most ``cap`` of them
    around the incumbent when the full product is larger.

    The returned space always holds the all-zero action at index 0 and the
    incumbent (projected from ``incumbent``) at ``space.incumbent``.
    """
    links = associated_links(assoc_c)
    N, L = depl.num_subchannels, params.power_levels
    num_links = len(links)
    options = 1 + N * L
    full_size = options**num_links

    zero = (np.full(num_links, -1, dtype=int), np.zeros(num_links, dtype=int))
    if incumbent is not None:
        current = project_incumbent(params, links, incumbent, c)
    else:
        current = zero

    def key(action: tuple[np.ndarray, np.ndarray]) -> tuple:
        return tuple(action[0].tolist()) + tuple(action[1].tolist())

    chosen = [zero]
    seen = {key(zero)}
    if key(current) not in seen:
        chosen.append(current)
        seen.add(key(current))

    if full_size <= cap:
        per_link = [(-1, 0)] + [(n, level) for n in range(N) for level in range(1, L + 1)]
        for combo in itertools.product(per_link, repeat=num_links):
            action = (
                np.array([n for n, _ in combo], dtype=int),
                np.array([level for _, level in combo], dtype=int),
            )
            if key(action) in seen or not is_valid_action(*action, links, L):
                continue
            chosen.append(action)
            seen.add(key(action))
    else:
        rng = rng or np.random.default_rng(0)
        attempts = 50 * cap
        while len(chosen) < cap and attempts > 0:
            attempts -= 1
            redraw = rng.random(num_links) < mutation_rate
            picks = rng.integers(0, options, size=num_links)
            subchannels = np.where(redraw, np.where(picks > 0, (picks - 1) // L, -1), current[0])
            levels = np.where(redraw, np.where(picks > 0, (picks - 1) % L + 1, 0), current[1])
            action = (subchannels.astype(int), levels.astype(int))
            if key(action) in seen or not is_valid_action(*action, links, L):
                continue
            chosen.append(action)
            seen.add(key(action))

    return ActionSpace(
        group=c,
        assoc=np.asarray(assoc_c, dtype=float),
        links=links.reshape(-1, 2),
        subchannels=np.array([a[0] for a in chosen], dtype=int).reshape(len(chosen), num_links),
        levels=np.array([a[1] for a in chosen], dtype=int).reshape(len(chosen), num_links),
        level_power=level_powers(params),
        incumbent=1 if len(chosen) > 1 and key(current) != key(zero) else 0,
        full_size=full_size,
    )


def action_to_power(space: ActionSpace, action: int, num_subchannels: int) -> tuple[np.ndarray, np.ndarray]:
    """(subch, power) tensors of shape (S, K, N) implied by one action."""
    S, K = space.assoc.shape
    subch = np.zeros((S, K, num_subchannels))
    power = np.zeros((S, K, num_subchannels))
    n = space.subchannels[action]
    on = n >= 0
    s, k = space.links[on, 0], space.links[on, 1]
    subch[s, k, n[on]] = 1.0
    power[s, k, n[on]] = space.powers[action][on]
    return subch, power


def joint_allocation(spaces: list[ActionSpace], actions: np.ndarray, depl: Deployment) -> Allocation:
    """Network allocation implied by one action per CSC."""
    allocation = Allocation.for_deployment(depl)
    for space, action in zip(spaces, actions):
        subch, power = action_to_power(space, int(action), depl.num_subchannels)
        allocation = allocation.with_group(space.group, space.assoc, subch, power)
    return allocation
