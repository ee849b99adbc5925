"""
Monte Carlo Pipeline

Runs an experiment spec: for every sweep point, mode (and variant) and drop it
generates a fresh deployment from the drop seed, solves it with the HARM
engine and collects the figures of merit. Drops run concurrently; results are
joined and ordered before aggregation so the output does not depend on the
worker count. Oracle-sized specs can also be checked against the exhaustive
optimum.
"""

import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..fn_harm.config import HarmConfig, SolverMode
from ..fn_harm.engine.harm_engine import HarmEngine
from ..fn_harm.engine.solution import network_metrics
from ..fn_network_model.engine.deployment import centralize, generate_deployment
from ..fn_network_model.engine.radio_model import network_ee
from ..fn_oracle.engine.oracle_engine import oracle_optimum, project_to_grid
from ..shared.errors import ExperimentError
from ..shared.logger import SimulationLogger
from .config import ExperimentSpec, VariantSpec, mode_label
from .utils.DataStructures import (
    AggregateRecord,
    ExperimentResult,
    FailureRecord,
    MetricsRecord,
    OracleRecord,
)


@dataclass(frozen=True)
class _Cell:
    index: int
    sweep_value: Any
    mode: SolverMode
    variant: Optional[VariantSpec]

    @property
    def label(self) -> str:
        return mode_label(self.mode, self.variant)


def drop_seed(seed: int, drop: int) -> int:
    """Seed of one drop, shared by every cell so modes are compared on paired deployments."""
    return int(np.random.SeedSequence([seed, drop]).generate_state(1)[0])


def _harm_config(spec: ExperimentSpec, cell: _Cell) -> HarmConfig:
    overrides = dict(cell.variant.harm) if cell.variant else {}
    overrides["mode"] = cell.mode
    return HarmConfig(**{**spec.data.harm.model_dump(), **overrides})


def _solve_drop(
    spec: ExperimentSpec,
    cell: _Cell,
    drop: int,
    logger: SimulationLogger,
) -> Tuple[MetricsRecord, Dict[str, List[float]]]:
    seed = drop_seed(spec.parameters.seed, drop)
    params = spec.data.scenario_for(cell.sweep_value, cell.variant)
    qpso = spec.data.qpso.model_copy(update={"rng_seed": seed})
    crc = spec.data.crc.model_copy(update={"rng_seed": seed})

    start = time.perf_counter()
    depl = generate_deployment(params, seed=seed, logger=logger)
    engine = HarmEngine(qpso, crc, _harm_config(spec, cell), logger)
    solution = engine.solve(depl, cell.mode)
    metrics = network_metrics(params, depl, solution)
    seconds = time.perf_counter() - start

    record = MetricsRecord(
        sweep_name=spec.data.sweep.name,
        sweep_value=cell.sweep_value,
        mode=cell.label,
        drop=drop,
        ee_bits_per_joule=metrics.ee_bits_per_joule,
        outage_prob=metrics.outage_prob,
        offload_prob=metrics.offload_prob,
        iters=metrics.iterations,
        seconds=seconds,
    )
    traces = {name: [float(v) for v in values] for name, values in solution.traces.items()}
    if solution.outer_trace:
        traces["network_ee"] = [float(v) for v in solution.outer_trace]
    return record, traces


def _std(values: np.ndarray) -> float:
    return float(np.std(values, ddof=1)) if values.size > 1 else 0.0


def aggregate(records: List[MetricsRecord], failures: int = 0) -> AggregateRecord:
    """Mean and sample standard deviation of one cell's successful drops."""
    if not records:
        raise ValueError("Cannot aggregate an empty record set")
    ee = np.array([r.ee_bits_per_joule for r in records])
    outage = np.array([r.outage_prob for r in records])
    offload = np.array([r.offload_prob for r in records])
    first = records[0]
    return AggregateRecord(
        sweep_name=first.sweep_name,
        sweep_value=first.sweep_value,
        mode=first.mode,
        drops=len(records),
        failures=failures,
        ee_mean=float(ee.mean()),
        ee_std=_std(ee),
        outage_mean=float(outage.mean()),
        outage_std=_std(outage),
        offload_mean=float(offload.mean()),
        offload_std=_std(offload),
        iters_mean=float(np.mean([r.iters for r in records])),
    )


def run_experiment(spec: ExperimentSpec, logger: Optional[SimulationLogger] = None) -> ExperimentResult:
    """
    Solve every (sweep point, mode, drop) of ``spec``.

    Args:
        spec: resolved experiment spec
        logger: logger shared by the drop workers

    Returns:
        ExperimentResult with records in (sweep value, mode, drop) order

    Raises:
        ExperimentError: every drop of some cell failed
    """
    logger = logger or SimulationLogger(spec.parameters.log_level, spec.parameters.verbose)
    parameters = spec.parameters
    cells = [
        _Cell(index, value, mode, variant)
        for index, (value, mode, variant) in enumerate(spec.data.cells())
    ]
    jobs = [(cell, drop) for cell in cells for drop in range(parameters.num_drops)]
    logger.info(
        f"Experiment '{spec.data.name}': {len(cells)} cells x {parameters.num_drops} drops "
        f"on {parameters.max_workers} workers",
        section="START",
    )

    outcomes: Dict[Tuple[int, int], Tuple[MetricsRecord, Dict[str, List[float]]]] = {}
    errors: Dict[Tuple[int, int], str] = {}
    with ThreadPoolExecutor(max_workers=parameters.max_workers) as executor:
        futures = {
            executor.submit(
                _solve_drop, spec, cell, drop, logger.with_tag(f"{cell.label} {cell.sweep_value} #{drop}")
            ): (cell, drop)
            for cell, drop in jobs
        }
        for future in as_completed(futures):
            cell, drop = futures[future]
            try:
                outcomes[(cell.index, drop)] = future.result()
            except Exception as e:
                errors[(cell.index, drop)] = f"{type(e).__name__}: {e}"
                logger.warning(f"Drop {drop} of {cell.label} at {spec.data.sweep.name}={cell.sweep_value} failed: {e}")

    result = ExperimentResult(spec=spec.model_dump(mode="json"))
    for cell in cells:
        cell_records: List[MetricsRecord] = []
        for drop in range(parameters.num_drops):
            key = (cell.index, drop)
            if key in outcomes:
                record, traces = outcomes[key]
                cell_records.append(record)
                if parameters.traces:
                    result.traces[(str(cell.sweep_value), cell.label, drop)] = traces
            else:
                result.failures.append(FailureRecord(cell.sweep_value, cell.label, drop, errors[key]))
        if not cell_records:
            raise ExperimentError(
                f"All {parameters.num_drops} drops of {cell.label} at "
                f"{spec.data.sweep.name}={cell.sweep_value} failed; first error: "
                f"{errors[(cell.index, 0)]}"
            )
        result.records.extend(cell_records)
        result.aggregates.append(aggregate(cell_records, parameters.num_drops - len(cell_records)))

    logger.info(
        f"Experiment '{spec.data.name}' finished: {len(result.records)} records, {len(result.failures)} failed drops",
        section="END",
    )
    return result


def run_oracle_check(spec: ExperimentSpec, logger: Optional[SimulationLogger] = None) -> List[OracleRecord]:
    """
    Compare TURA with the exhaustive optimum on every (sweep point, drop) of an
    oracle-sized spec. Both solve the centralized view of the drop.

    Raises:
        OracleRefusal: some instance exceeds the oracle's enumeration budget
    """
    logger = logger or SimulationLogger(spec.parameters.log_level, spec.parameters.verbose)
    limits = spec.data.oracle
    records: List[OracleRecord] = []
    for value in spec.data.sweep.values:
        params = spec.data.scenario_for(value)
        for drop in range(spec.parameters.num_drops):
            seed = drop_seed(spec.parameters.seed, drop)
            depl = centralize(generate_deployment(params, seed=seed, logger=logger))
            optimum = oracle_optimum(depl.params, depl, limits, logger)

            harm = spec.data.harm.model_copy(
                update={"onoff_enabled": limits.onoff_enabled, "fronthaul_limited": limits.fronthaul_limited}
            )
            engine = HarmEngine(
                spec.data.qpso.model_copy(update={"rng_seed": seed}),
                spec.data.crc,
                harm,
                logger,
            )
            solution = engine.solve(depl, SolverMode.TURA)
            grid = project_to_grid(depl.params, solution.allocation, limits.power_levels)
            record = OracleRecord(
                sweep_name=spec.data.sweep.name,
                sweep_value=value,
                drop=drop,
                feasible=optimum.feasible,
                oracle_ee=optimum.ee,
                tura_ee=network_ee(depl, solution.allocation, limits.onoff_enabled),
                tura_grid_ee=network_ee(depl, grid, limits.onoff_enabled),
                enumeration_size=optimum.enumeration_size,
            )
            logger.info(
                f"{spec.data.sweep.name}={value} drop {drop}: oracle {record.oracle_ee:.6g}, "
                f"TURA {record.tura_ee:.6g} (grid {record.tura_grid_ee:.6g}) bit/J"
            )
            records.append(record)
    return records
