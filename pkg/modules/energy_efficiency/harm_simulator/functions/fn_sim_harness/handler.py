"""
Experiment Handler

Function-style entry point: resolves a spec, runs the Monte Carlo pipeline and
writes the report, answering with a status dictionary instead of raising.
"""

from typing import Any, Dict

from ..shared.logger import create_logger_service
from .pipeline import run_experiment
from .services.ReportService import GeneralReportService


def handle(data: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run one experiment.

    Args:
        data: Dictionary containing:
            - specFile: Optional path of a YAML spec file
            - preset: Optional bundled preset name
            - spec: Optional spec document layered over specFile
            - outDir: Output directory (required)
            - logLevel: Optional log level (DEBUG, INFO, WARNING, ERROR)
            - verbose: Optional verbose flag

    Returns:
        Dictionary with status, and on success the written files and record counts
    """
    logger = None

    try:
        from modules.energy_efficiency.harm_simulator.config.configuration_manager import (
            ConfigurationManager,
        )

        if "outDir" not in data:
            raise ValueError("outDir must be provided in data")

        manager = ConfigurationManager()
        spec = manager.resolve(data.get("specFile"), data.get("preset"), data.get("spec"))
        loglevel = data.get("logLevel", spec.parameters.log_level)
        verbose = data.get("verbose", spec.parameters.verbose)
        logger = create_logger_service(loglevel, verbose)
        logger.info(f"Starting experiment '{spec.data.name}' with loglevel = {loglevel} with verbose set to {verbose}")

        result = run_experiment(spec, logger)
        files = GeneralReportService(logger).write_report(result, data["outDir"], spec.parameters.output_format)

        return {
            "status": "succeeded",
            "files": [str(path) for path in files],
            "records": len(result.records),
            "failures": len(result.failures),
        }

    except Exception as e:
        message = f"Experiment failed: {e!s}"

        if logger:
            logger.error(message)
        else:
            print(f"[ERROR] {message}")

        return {"status": "failure", "message": message}
