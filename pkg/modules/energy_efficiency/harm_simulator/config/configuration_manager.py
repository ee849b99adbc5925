"""
Configuration Management System for HARM Experiments

Loads experiment spec files, checks their structure against JSON schemas and
layers them into a resolved ExperimentSpec.

Features:
- YAML spec files with `parameters` and `data` sections
- Structural schema checking before typed validation
- Layering: default config <- preset <- spec file <- environment <- CLI flags
- Engineering-unit scenario aliases merged without dual definitions
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import jsonschema
import yaml
from pydantic import ValidationError

from modules.energy_efficiency.harm_simulator.functions.fn_sim_harness.config import (
    ExperimentSpec,
    merge_scenario,
)
from modules.energy_efficiency.harm_simulator.functions.shared.errors import SpecError

logger = logging.getLogger(__name__)

MODULE_DIR = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_FILE = MODULE_DIR / "default.config.yaml"
PRESETS_DIR = MODULE_DIR / "presets"
LOG_LEVEL_ENV = "HARM_LOG_LEVEL"

_MODES = ["tura", "crc", "harm", "rura"]
_SECTIONS = ["qpso", "crc", "harm", "oracle"]


class ConfigurationValidator:
    """Validates spec documents against schemas."""

    def __init__(self):
        self.schemas = self._load_schemas()

    def _load_schemas(self) -> Dict[str, Dict[str, Any]]:
        """Load JSON schemas for validation."""
        scalar = {"type": ["number", "string", "boolean"]}
        return {
            "spec": {
                "type": "object",
                "required": ["data"],
                "additionalProperties": False,
                "properties": {
                    "parameters": {
                        "type": "object",
                        "properties": {
                            "num_drops": {"type": "integer", "minimum": 1},
                            "seed": {"type": "integer", "minimum": 0},
                            "traces": {"type": "boolean"},
                            "max_workers": {"type": "integer", "minimum": 1},
                            "log_level": {
                                "type": "string",
                                "enum": ["DEBUG", "INFO", "WARNING", "ERROR"],
                            },
                            "verbose": {"type": "boolean"},
                            "output_format": {"type": "string", "enum": ["csv", "json"]},
                        },
                    },
                    "data": {
                        "type": "object",
                        "required": ["sweep"],
                        "properties": {
                            "name": {"type": "string", "minLength": 1},
                            "scenario": {"type": "object"},
                            **{section: {"type": "object"} for section in _SECTIONS},
                            "modes": {
                                "type": "array",
                                "minItems": 1,
                                "items": {"type": "string", "enum": _MODES},
                            },
                            "variants": {"type": "array", "items": {"type": "object"}},
                            "hold_total_rscs": {"type": ["integer", "null"], "minimum": 1},
                        },
                    },
                },
            },
            "sweep": {
                "type": "object",
                "required": ["name", "values"],
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "values": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"anyOf": [scalar, {"type": "array", "items": {"type": "number"}}]},
                    },
                },
            },
            "variant": {
                "type": "object",
                "required": ["name"],
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "harm": {"type": "object"},
                    "scenario": {"type": "object"},
                    "modes": {"type": "array", "minItems": 1, "items": {"type": "string", "enum": _MODES}},
                },
            },
        }

    def _errors(self, document: Any, schema: str, where: str) -> List[str]:
        validator = jsonschema.Draft7Validator(self.schemas[schema])
        errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
        messages = []
        for error in errors:
            path = ".".join(str(p) for p in error.absolute_path)
            location = f"{where}.{path}" if path else where
            messages.append(f"{location}: {error.message}")
        return messages

    def validate_spec(self, spec_data: Dict[str, Any]) -> List[str]:
        """Structural check of a merged spec document; returns error messages."""
        errors = self._errors(spec_data, "spec", "spec")
        if errors or not isinstance(spec_data, dict):
            return errors
        data = spec_data.get("data", {})
        errors.extend(self._errors(data.get("sweep"), "sweep", "data.sweep"))
        for i, variant in enumerate(data.get("variants") or []):
            errors.extend(self._errors(variant, "variant", f"data.variants.{i}"))
        return errors


class ConfigurationManager:
    """Loads and layers experiment spec files."""

    def __init__(
        self,
        default_file: Union[str, Path] = DEFAULT_CONFIG_FILE,
        presets_dir: Union[str, Path] = PRESETS_DIR,
    ):
        """
        Args:
            default_file: YAML document every spec is layered on
            presets_dir: directory holding ``<preset>.config.yaml`` recipes
        """
        self.default_file = Path(default_file)
        self.presets_dir = Path(presets_dir)
        self.validator = ConfigurationValidator()

    def load_yaml_file(self, file_path: Union[str, Path]) -> Dict[str, Any]:
        """
        Load a YAML mapping; an empty file is an empty mapping.

        Raises:
            SpecError: missing file, invalid YAML or a non-mapping document
        """
        file_path = Path(file_path)
        if not file_path.exists():
            raise SpecError(f"YAML file not found: {file_path}")
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                config_data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise SpecError(f"Invalid YAML in {file_path}: {e}") from e
        if config_data is None:
            return {}
        if not isinstance(config_data, dict):
            raise SpecError(f"{file_path} must contain a mapping, got {type(config_data).__name__}")
        return config_data

    def list_presets(self) -> List[str]:
        return sorted(p.name.removesuffix(".config.yaml") for p in self.presets_dir.glob("*.config.yaml"))

    def preset_path(self, preset: str) -> Path:
        path = self.presets_dir / f"{preset}.config.yaml"
        if not path.exists():
            raise SpecError(f"Unknown preset '{preset}', available: {', '.join(self.list_presets())}")
        return path

    def resolve(
        self,
        spec_file: Optional[Union[str, Path]] = None,
        preset: Optional[str] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ) -> ExperimentSpec:
        """
        Build the resolved spec from the layered documents.

        Raises:
            SpecError: any layer is unreadable or the merged document is invalid
        """
        layers = [self.load_yaml_file(self.default_file)] if self.default_file.exists() else []
        if preset:
            layers.append(self.load_yaml_file(self.preset_path(preset)))
        if spec_file:
            layers.append(self.load_yaml_file(spec_file))
        layers.append(self.env_overrides())
        if overrides:
            layers.append(overrides)

        merged: Dict[str, Any] = {}
        for layer in layers:
            merged = self._merge_configs(merged, layer)
        return self.build_spec(merged)

    def build_spec(self, spec_data: Dict[str, Any]) -> ExperimentSpec:
        validation_errors = self.validator.validate_spec(spec_data)
        if validation_errors:
            raise SpecError("Spec validation failed:\n  " + "\n  ".join(validation_errors))
        try:
            return ExperimentSpec(**spec_data)
        except ValidationError as e:
            raise SpecError(f"Spec validation failed: {e}") from e

    def env_overrides(self) -> Dict[str, Any]:
        level = os.getenv(LOG_LEVEL_ENV)
        if not level:
            return {}
        logger.debug(f"Log level {level} taken from {LOG_LEVEL_ENV}")
        return {"parameters": {"log_level": level.upper()}}

    @staticmethod
    def cli_overrides(
        drops: Optional[int] = None,
        seed: Optional[int] = None,
        mode: Optional[str] = None,
        traces: bool = False,
        output_format: Optional[str] = None,
    ) -> Dict[str, Any]:
        """Spec fragment equivalent to the run command's flags."""
        parameters: Dict[str, Any] = {}
        if drops is not None:
            parameters["num_drops"] = drops
        if seed is not None:
            parameters["seed"] = seed
        if traces:
            parameters["traces"] = True
        if output_format:
            parameters["output_format"] = output_format
        overrides: Dict[str, Any] = {"parameters": parameters} if parameters else {}
        if mode:
            overrides["data"] = {"modes": [mode]}
        return overrides

    def dump_yaml(self, spec: ExperimentSpec) -> str:
        return yaml.safe_dump(spec.model_dump(mode="json"), sort_keys=False, default_flow_style=False)

    def _merge_configs(self, base_config: Dict[str, Any], override_config: Dict[str, Any]) -> Dict[str, Any]:
        """Merge configuration dictionaries; lists are replaced, scenario aliases are reconciled."""
        merged = copy.deepcopy(base_config)

        for key, value in override_config.items():
            if key == "scenario" and isinstance(merged.get(key), dict) and isinstance(value, dict):
                merged[key] = merge_scenario(merged[key], copy.deepcopy(value))
            elif key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = self._merge_configs(merged[key], value)
            else:
                merged[key] = copy.deepcopy(value)

        return merged
