"""Conversions between engineering units used in configs and the linear SI values used internally."""

import math


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * math.log10(value)


def dbm_to_watt(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def watt_to_dbm(value_w: float) -> float:
    return 10.0 * math.log10(value_w) + 30.0


def mbps_to_bps(value_mbps: float) -> float:
    return value_mbps * 1e6


def khz_to_hz(value_khz: float) -> float:
    return value_khz * 1e3
