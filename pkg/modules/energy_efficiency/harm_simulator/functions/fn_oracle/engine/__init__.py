from .oracle_engine import ce_gains, enumeration_size, oracle_optimum, project_to_grid, verify_ce

__all__ = ["oracle_optimum", "enumeration_size", "project_to_grid", "ce_gains", "verify_ce"]
