"""
Run configuration: environment defaults (GAUSSENT_*), flat key=value config
files, and the validated RunConfig consumed by the CLI commands.

Precedence: settings/env defaults < config file < command-line flags.
"""

import logging
import math
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, ValidationInfo, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from gaussent.dynamics.analytic import ReservoirKind, ReservoirModel
from gaussent.guardrails import RUN_PARAMS, validate_log_level, validate_run_param

logger = logging.getLogger(__name__)

# Keys accepted in a config file, mapped to RunConfig fields
CONFIG_FILE_KEYS: dict[str, str] = {
    "model": "model",
    "gamma": "gamma",
    "r": "r_list",
    "nbar": "nbar_list",
    "points": "points",
    "tau_max": "tau_max",
    "out": "output_path",
    "precision": "precision",
    "dt": "dt",
}


class ConfigError(ValueError):
    """Raised for unreadable or malformed configuration input."""


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="GAUSSENT_", extra="ignore")

    log_level: str = "INFO"
    workers: int = RUN_PARAMS["workers"]["default"]
    # Reserved; every computation is deterministic, so the seed is never read.
    seed: int | None = None
    points: int = RUN_PARAMS["points"]["default"]
    tau_max: float = RUN_PARAMS["tau_max"]["default"]
    precision: int = RUN_PARAMS["precision"]["default"]
    gamma: float = RUN_PARAMS["gamma"]["default"]
    dt: float = RUN_PARAMS["dt"]["default"]
    out: Path = Path("out")

    @field_validator("log_level", mode="before")
    @classmethod
    def _known_level(cls, value: Any) -> str:
        ok, err = validate_log_level(value)
        if not ok:
            raise ValueError(err)
        return str(value).upper()

    @field_validator("workers", "points", "tau_max", "precision", "gamma", "dt", mode="before")
    @classmethod
    def _within_guardrails(cls, value: Any, info: ValidationInfo) -> Any:
        ok, err = validate_run_param(info.field_name, value)
        if not ok:
            raise ValueError(err)
        return value


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: ReservoirKind = ReservoirKind.COMMON
    gamma: float = RUN_PARAMS["gamma"]["default"]
    r_list: tuple[float, ...]
    nbar_list: tuple[float, ...]
    points: int = RUN_PARAMS["points"]["default"]
    tau_max: float = RUN_PARAMS["tau_max"]["default"]
    output_path: Path = Path("out")
    precision: int = RUN_PARAMS["precision"]["default"]
    dt: float = RUN_PARAMS["dt"]["default"]

    @field_validator("points", "tau_max", "precision", "gamma", "dt", mode="before")
    @classmethod
    def _within_guardrails(cls, value: Any, info: ValidationInfo) -> Any:
        ok, err = validate_run_param(info.field_name, value)
        if not ok:
            raise ValueError(err)
        return value

    @field_validator("r_list", "nbar_list", mode="before")
    @classmethod
    def _list_within_guardrails(cls, value: Any, info: ValidationInfo) -> Any:
        key = "r" if info.field_name == "r_list" else "nbar"
        if isinstance(value, str):
            value = parse_float_list(value)
        values = list(value)
        if not values:
            raise ValueError(f"{key} list must not be empty")
        for item in values:
            ok, err = validate_run_param(key, item)
            if not ok:
                raise ValueError(err)
        return tuple(values)

    def reservoir(self, nbar: float) -> ReservoirModel:
        return ReservoirModel(self.model, gamma=self.gamma, nbar=nbar)


def parse_float_list(text: str) -> list[float]:
    """Parse '0, 0.1,0.5' into floats."""
    items = [item.strip() for item in str(text).split(",") if item.strip()]
    try:
        values = [float(item) for item in items]
    except ValueError as exc:
        raise ConfigError(f"not a comma-separated list of numbers: {text!r}") from exc
    if any(not math.isfinite(v) for v in values):
        raise ConfigError(f"list contains non-finite values: {text!r}")
    return values


def load_config_file(path: Path) -> dict[str, Any]:
    """Read a flat key=value file and return RunConfig field values."""
    if not Path(path).is_file():
        raise ConfigError(f"config file not found: {path}")
    raw = dotenv_values(path)
    values: dict[str, Any] = {}
    for key, value in raw.items():
        name = key.strip().lower()
        if name not in CONFIG_FILE_KEYS:
            raise ConfigError(f"Unknown parameter in {path}: {key}")
        if value is None or value.strip() == "":
            raise ConfigError(f"Missing value for {key} in {path}")
        values[CONFIG_FILE_KEYS[name]] = value.strip()
    logger.debug("load_config_file: %s -> %s", path, sorted(values))
    return values


def build_run_config(
    settings: Settings,
    file_values: dict[str, Any] | None = None,
    flag_values: dict[str, Any] | None = None,
    command_defaults: dict[str, Any] | None = None,
) -> RunConfig:
    """Merge settings defaults, per-command defaults, config-file values and flags (flags win)."""
    merged: dict[str, Any] = {
        "model": ReservoirKind.COMMON,
        "gamma": settings.gamma,
        "r_list": (RUN_PARAMS["r"]["default"],),
        "nbar_list": (RUN_PARAMS["nbar"]["default"],),
        "points": settings.points,
        "tau_max": settings.tau_max,
        "output_path": settings.out,
        "precision": settings.precision,
        "dt": settings.dt,
    }
    merged.update(command_defaults or {})
    merged.update(file_values or {})
    merged.update({k: v for k, v in (flag_values or {}).items() if v is not None})
    return RunConfig(**merged)
