"""
CRC

Cooperative resource competition between the CSCs of neighbouring localized
C-RANs, learned with regret matching over discrete subchannel/power actions.
"""

from .config import CrcConfig, SelectionRule, StopRule
from .engine import CrcEngine, run_crc, run_regret_matching
from .utils.DataStructures import ActionSpace, CrcResult, ExchangedBeliefs, GameState, PlayerState

__all__ = [
    "CrcConfig",
    "SelectionRule",
    "StopRule",
    "CrcEngine",
    "run_crc",
    "run_regret_matching",
    "ActionSpace",
    "GameState",
    "PlayerState",
    "ExchangedBeliefs",
    "CrcResult",
]
