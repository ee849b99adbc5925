from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ...fn_network_model.utils.DataStructures import Allocation


@dataclass(frozen=True)
class OracleResult:
    """
    Exact optimum over the discrete grid.

    ``allocation`` is None and ``feasible`` False when no enumerated
    allocation satisfies every constraint.
    """

    allocation: Optional[Allocation]
    ee: float  # bit/J, exact interference; 0 when infeasible
    feasible: bool
    evaluated: int
    enumeration_size: int
