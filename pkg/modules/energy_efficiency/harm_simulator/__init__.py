"""
HARM Energy-Efficiency Simulator

Split small-cell C-RAN simulator: network model, TURA (QPSO) inside each
localized C-RAN, the CRC regret-matching game between CSCs, the hybrid HARM
loop, an exhaustive oracle and the Monte Carlo harness.
"""

from .functions.fn_crc import CrcConfig, CrcEngine, run_crc, run_regret_matching
from .functions.fn_harm import HarmConfig, HarmEngine, SolverMode, network_metrics, run_harm, run_rura
from .functions.fn_network_model import Allocation, Deployment, ScenarioParams
from .functions.fn_oracle import OracleLimits, oracle_optimum, verify_ce
from .functions.fn_sim_harness import ExperimentSpec, run_experiment
from .functions.fn_tura import QpsoConfig, TuraEngine, run_tura

__all__ = [
    "ScenarioParams",
    "Deployment",
    "Allocation",
    "QpsoConfig",
    "TuraEngine",
    "run_tura",
    "CrcConfig",
    "CrcEngine",
    "run_crc",
    "run_regret_matching",
    "HarmConfig",
    "HarmEngine",
    "SolverMode",
    "run_harm",
    "run_rura",
    "network_metrics",
    "OracleLimits",
    "oracle_optimum",
    "verify_ce",
    "ExperimentSpec",
    "run_experiment",
]
