"""
Mode Handlers Module

One handler per resource-management scheme.
"""

from .CrcModeHandler import CrcModeHandler
from .HarmModeHandler import HarmModeHandler
from .ModeHandler import ModeHandler
from .RuraModeHandler import RuraModeHandler
from .TuraModeHandler import TuraModeHandler

__all__ = [
    "ModeHandler",
    "TuraModeHandler",
    "CrcModeHandler",
    "HarmModeHandler",
    "RuraModeHandler",
]
