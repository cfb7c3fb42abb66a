"""
Analysis settings.

Sources, lowest to highest priority:
1. Model defaults
2. The [analysis] table of fewnomial.toml (or the file given with --config)
3. FEWNOMIAL_* environment variables, after load_dotenv()
4. Explicit command-line flags
"""

import logging
import os
from typing import Any, Dict, Optional

import toml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = "fewnomial.toml"

ENV_VARS = {
    "precision": "FEWNOMIAL_PRECISION",
    "max_precision": "FEWNOMIAL_MAX_PRECISION",
    "max_depth": "FEWNOMIAL_MAX_DEPTH",
    "exterior_power_cap": "FEWNOMIAL_EXTERIOR_POWER_CAP",
}


class AnalysisSettings(BaseModel):
    """Every tunable of the analysis pipeline."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    precision: int = Field(32, ge=4, description="first rung of the precision ladder, in bits")
    max_precision: int = Field(4096, description="last rung of the precision ladder, in bits")
    max_depth: int = Field(64, ge=1, description="bisection depth per interval")
    exterior_power_cap: int = Field(12, ge=1, description="largest m for exterior letters r")
    grid_points: int = Field(1000, ge=2)
    numeric_seeds: int = Field(6, ge=1)
    slow: bool = False

    @model_validator(mode="after")
    def _ladder_is_ordered(self) -> "AnalysisSettings":
        if self.max_precision < self.precision:
            raise ValueError(f"max_precision {self.max_precision} is below precision {self.precision}")
        return self


def load_config_file(path: Optional[str] = None) -> Dict[str, Any]:
    """The [analysis] table of a TOML file; missing default file means no overrides."""
    target = path or DEFAULT_CONFIG_FILE
    if not os.path.exists(target):
        if path is not None:
            raise FileNotFoundError(f"config file {path} not found")
        return {}
    with open(target, "r") as f:
        data = toml.load(f)
    section = data.get("analysis", {})
    logger.debug("loaded %d settings from %s", len(section), target)
    return dict(section)


def load_environment() -> Dict[str, Any]:
    load_dotenv()
    values = {}
    for name, var in ENV_VARS.items():
        raw = os.getenv(var)
        if raw is not None and raw.strip():
            values[name] = raw.strip()
    return values


def load_settings(config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> AnalysisSettings:
    """
    Merge the configuration sources.

    Raises:
        pydantic.ValidationError: a value is out of range
        FileNotFoundError: an explicit config path does not exist
    """
    values: Dict[str, Any] = {}
    values.update(load_config_file(config_path))
    values.update(load_environment())
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return AnalysisSettings(**values)
