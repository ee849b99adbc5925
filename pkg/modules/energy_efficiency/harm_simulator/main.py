"""
Main Entry Point - Run HARM energy-efficiency experiments from spec files.

Commands:
  run <specfile>       Monte Carlo experiment, writes records, summary and traces
  validate <specfile>  resolve the layered spec and print it as YAML
  oracle <specfile>    compare TURA with the exhaustive optimum on oracle-sized specs

Exit codes: 0 success, 1 spec error, 2 runtime failure, 3 oracle refusal.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Paths relative to this file (harm_simulator package dir)
SCRIPT_DIR = Path(__file__).resolve().parent
REPO_ROOT = SCRIPT_DIR.parent.parent.parent
sys.path.insert(0, str(REPO_ROOT))

from modules.energy_efficiency.harm_simulator.config.configuration_manager import (  # noqa: E402
    ConfigurationManager,
)
from modules.energy_efficiency.harm_simulator.functions.fn_sim_harness.pipeline import (  # noqa: E402
    run_experiment,
    run_oracle_check,
)
from modules.energy_efficiency.harm_simulator.functions.fn_sim_harness.services.ReportService import (  # noqa: E402
    GeneralReportService,
)
from modules.energy_efficiency.harm_simulator.functions.shared.errors import (  # noqa: E402
    OracleRefusal,
    SpecError,
)
from modules.energy_efficiency.harm_simulator.functions.shared.logger import (  # noqa: E402
    create_logger_service,
)

EXIT_OK = 0
EXIT_SPEC_ERROR = 1
EXIT_RUNTIME_ERROR = 2
EXIT_ORACLE_REFUSAL = 3

# Configure logging
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)


def _load_env() -> None:
    """Load environment variables from .env if present. Prefer repo root .env."""
    try:
        from dotenv import load_dotenv

        env_path = REPO_ROOT / ".env"
        if env_path.exists():
            load_dotenv(env_path)
        else:
            load_dotenv()
    except Exception:
        pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Energy-efficiency experiments for split small-cell C-RAN networks")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_spec_arguments(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("specfile", nargs="?", default=None, help="YAML spec file layered over the defaults")
        sub.add_argument("--preset", default=None, help="Bundled recipe (fig4 .. fig13, coverage)")
        sub.add_argument("--drops", type=int, default=None, help="Monte Carlo drops per sweep point and mode")
        sub.add_argument("--seed", type=int, default=None, help="Experiment seed")
        sub.add_argument("--mode", choices=["tura", "crc", "harm", "rura"], default=None, help="Run only this mode")

    run = subparsers.add_parser("run", help="Run a Monte Carlo experiment")
    add_spec_arguments(run)
    run.add_argument("--out", default="results", help="Output directory. Default results/")
    run.add_argument("--format", choices=["csv", "json"], default=None, help="Per-drop record format")
    run.add_argument("--traces", action="store_true", help="Write per-iteration trace files")

    validate = subparsers.add_parser("validate", help="Resolve a spec and print it")
    add_spec_arguments(validate)

    oracle = subparsers.add_parser("oracle", help="Compare TURA with the exhaustive optimum")
    add_spec_arguments(oracle)
    oracle.add_argument("--out", default=None, help="Write the comparison as JSON into this directory")
    return parser


def _resolve(manager: ConfigurationManager, args: argparse.Namespace):
    if not args.specfile and not args.preset:
        raise SpecError("Give a spec file, a --preset, or both")
    overrides = manager.cli_overrides(
        drops=args.drops,
        seed=args.seed,
        mode=args.mode,
        traces=getattr(args, "traces", False),
        output_format=getattr(args, "format", None),
    )
    return manager.resolve(args.specfile, args.preset, overrides)


def _run(args: argparse.Namespace, manager: ConfigurationManager) -> int:
    spec = _resolve(manager, args)
    sim_logger = create_logger_service(spec.parameters.log_level, spec.parameters.verbose)
    result = run_experiment(spec, sim_logger)
    files = GeneralReportService(sim_logger).write_report(result, args.out, spec.parameters.output_format)
    logger.info(f"Experiment '{spec.data.name}' wrote {len(files)} files to {args.out}")
    return EXIT_OK


def _validate(args: argparse.Namespace, manager: ConfigurationManager) -> int:
    spec = _resolve(manager, args)
    print(manager.dump_yaml(spec), end="")
    return EXIT_OK


def _oracle(args: argparse.Namespace, manager: ConfigurationManager) -> int:
    spec = _resolve(manager, args)
    sim_logger = create_logger_service(spec.parameters.log_level, spec.parameters.verbose)
    records = run_oracle_check(spec, sim_logger)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        out_file = out_dir / f"{spec.data.name}.oracle.json"
        with open(out_file, "w", encoding="utf-8") as f:
            json.dump([record.to_dict() for record in records], f, indent=2)
            f.write("\n")
        logger.info(f"Oracle comparison written to {out_file}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    _load_env()
    manager = ConfigurationManager()
    commands = {"run": _run, "validate": _validate, "oracle": _oracle}

    try:
        return commands[args.command](args, manager)
    except SpecError as e:
        logger.error(f"Spec error: {e}")
        return EXIT_SPEC_ERROR
    except OracleRefusal as e:
        logger.error(f"Oracle refused: {e}")
        return EXIT_ORACLE_REFUSAL
    except Exception as e:
        logger.error(f"Run failed: {type(e).__name__}: {e}")
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
