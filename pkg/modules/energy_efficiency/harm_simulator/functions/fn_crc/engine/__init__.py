"""
CRC engine: action spaces and the regret-matching game.
"""

from .action_space import (
    action_to_power,
    associated_links,
    build_action_space,
    joint_allocation,
    project_incumbent,
)
from .crc_game_engine import (
    CrcEngine,
    FiniteGame,
    MatrixGame,
    NetworkGame,
    exchange_beliefs,
    learn,
    probability_update,
    regret_update,
    run_crc,
    run_regret_matching,
    select_action,
    utility,
    utility_converged,
)

__all__ = [
    "build_action_space",
    "action_to_power",
    "associated_links",
    "joint_allocation",
    "project_incumbent",
    "CrcEngine",
    "FiniteGame",
    "MatrixGame",
    "NetworkGame",
    "utility",
    "regret_update",
    "probability_update",
    "exchange_beliefs",
    "select_action",
    "utility_converged",
    "learn",
    "run_crc",
    "run_regret_matching",
]
