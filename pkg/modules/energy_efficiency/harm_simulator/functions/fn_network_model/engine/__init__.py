"""
Network model engine: deployment generation and the radio/power model.
"""

from .deployment import (
    build_deployment,
    centralize,
    generate_deployment,
    pathloss_los_db,
    pathloss_nlos_db,
)
from .radio_model import (
    aggregate_ee,
    check_constraints,
    group_ee,
    group_power,
    group_rate,
    interference,
    interference_field,
    network_ee,
    power_breakdown,
    rate,
    rsc_rates,
    sinr,
    user_rates,
)

__all__ = [
    "generate_deployment",
    "build_deployment",
    "centralize",
    "pathloss_los_db",
    "pathloss_nlos_db",
    "interference",
    "interference_field",
    "sinr",
    "rate",
    "group_rate",
    "user_rates",
    "rsc_rates",
    "group_power",
    "power_breakdown",
    "group_ee",
    "network_ee",
    "aggregate_ee",
    "check_constraints",
]
