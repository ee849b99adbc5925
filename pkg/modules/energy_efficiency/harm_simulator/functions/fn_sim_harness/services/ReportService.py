import abc
import csv
import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ...shared.logger import SimulationLogger
from ..config import OutputFormat
from ..utils.DataStructures import (
    RECORD_COLUMNS,
    AggregateRecord,
    ExperimentResult,
    MetricsRecord,
)

SUMMARY_COLUMNS = list(AggregateRecord.__dataclass_fields__)
TRACE_COLUMNS = ["iteration", "value"]


class IReportService(abc.ABC):
    """
    Interface for writing experiment results to disk.
    """

    @abc.abstractmethod
    def write_report(self, result: ExperimentResult, out_dir: Union[str, Path], fmt: OutputFormat) -> List[Path]:
        pass

    @abc.abstractmethod
    def load_records(self, path: Union[str, Path]) -> List[MetricsRecord]:
        pass


class GeneralReportService(IReportService):
    """
    Writes per-drop records (CSV or JSON), the per-cell summary CSV and, when
    traces were collected, one (iteration, value) CSV per trace.
    """

    def __init__(self, logger: Optional[SimulationLogger] = None):
        self.logger = logger or SimulationLogger("INFO", False)

    def write_report(self, result: ExperimentResult, out_dir: Union[str, Path], fmt: OutputFormat) -> List[Path]:
        out_dir = Path(out_dir)
        name = _slug(str(result.spec.get("data", {}).get("name", "experiment")))
        fmt = OutputFormat(fmt)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OSError(f"Cannot create output directory {out_dir}: {e}") from e

        records_path = out_dir / f"{name}.records.{fmt.value}"
        written = [emit(result.records, fmt, records_path, spec=result.spec, failures=result.failures)]
        written.append(write_summary(result.aggregates, out_dir / f"{name}.summary.csv"))
        for (sweep_value, mode, drop), traces in result.traces.items():
            for trace_name, values in traces.items():
                path = out_dir / "traces" / f"{name}.{_slug(mode)}.{_slug(sweep_value)}.drop{drop}.{_slug(trace_name)}.csv"
                written.append(write_trace(values, path))

        self.logger.info(f"Wrote {len(written)} files to {out_dir}")
        return written

    def load_records(self, path: Union[str, Path]) -> List[MetricsRecord]:
        return load_records(path)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", text).strip("-") or "x"


def _open_for_write(path: Path):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", newline="", encoding="utf-8")
    except OSError as e:
        raise OSError(f"Cannot write {path}: {e}") from e


def emit(
    records: Sequence[MetricsRecord],
    fmt: Union[OutputFormat, str],
    path: Union[str, Path],
    spec: Optional[Dict[str, Any]] = None,
    failures: Sequence[Any] = (),
) -> Path:
    """
    Write per-drop records as CSV (header always present) or as JSON holding the
    resolved spec, the records and the failed drops.
    """
    path = Path(path)
    fmt = OutputFormat(fmt)
    with _open_for_write(path) as f:
        if fmt == OutputFormat.CSV:
            writer = csv.DictWriter(f, fieldnames=RECORD_COLUMNS)
            writer.writeheader()
            for record in records:
                writer.writerow(record.to_dict())
        else:
            payload = {
                "spec": spec or {},
                "records": [record.to_dict() for record in records],
                "failures": [failure.to_dict() for failure in failures],
            }
            json.dump(payload, f, indent=2)
            f.write("\n")
    return path


def write_summary(aggregates: Sequence[AggregateRecord], path: Union[str, Path]) -> Path:
    path = Path(path)
    with _open_for_write(path) as f:
        writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS)
        writer.writeheader()
        for aggregate in aggregates:
            writer.writerow(aggregate.to_dict())
    return path


def write_trace(values: Sequence[float], path: Union[str, Path]) -> Path:
    path = Path(path)
    with _open_for_write(path) as f:
        writer = csv.writer(f)
        writer.writerow(TRACE_COLUMNS)
        for iteration, value in enumerate(values):
            writer.writerow([iteration, value])
    return path


def _parse_scalar(text: str) -> Union[int, float, str]:
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def load_records(path: Union[str, Path]) -> List[MetricsRecord]:
    """Read records written by ``emit``, in either format."""
    path = Path(path)
    if path.suffix == ".json":
        with open(path, encoding="utf-8") as f:
            return [MetricsRecord(**row) for row in json.load(f)["records"]]
    with open(path, newline="", encoding="utf-8") as f:
        return [
            MetricsRecord(
                sweep_name=row["sweep_name"],
                sweep_value=_parse_scalar(row["sweep_value"]),
                mode=row["mode"],
                drop=int(row["drop"]),
                ee_bits_per_joule=float(row["ee_bits_per_joule"]),
                outage_prob=float(row["outage_prob"]),
                offload_prob=float(row["offload_prob"]),
                iters=int(row["iters"]),
                seconds=float(row["seconds"]),
            )
            for row in csv.DictReader(f)
        ]
