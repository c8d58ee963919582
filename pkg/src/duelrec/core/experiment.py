"""Experiment config file loading."""

import logging
import tomllib
from pathlib import Path
from typing import Any, Dict

from pydantic import ValidationError

from ..schemas.config import ExperimentConfig
from ..schemas.dataio import SyntheticEnvSpec
from .exceptions import ConfigError

logger = logging.getLogger(__name__)


def config_error(exc: ValidationError, prefix: str = "") -> ConfigError:
    """ConfigError for the first validation error, named by its dotted key."""
    error = exc.errors()[0]
    parts = ([prefix] if prefix else []) + [str(part) for part in error["loc"]]
    key = ".".join(parts)
    return ConfigError(
        f"{error['msg']}: {key}",
        params={"key": key, "type": error["type"], "errors": len(exc.errors())},
    )


def read_toml(path: Path) -> Dict[str, Any]:
    """Parse a TOML file.

    Raises:
        ConfigError: If the file is missing or not valid TOML
    """
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except FileNotFoundError as e:
        raise ConfigError("config file not found", params={"path": str(path)}) from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(
            f"config file is not valid TOML: {e}", params={"path": str(path)}
        ) from e


def load_experiment_config(path: Path) -> ExperimentConfig:
    """Load and validate an experiment config file.

    Raises:
        ConfigError: Naming the first offending dotted key
    """
    data = read_toml(path)
    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise config_error(e) from e
    logger.debug("Loaded experiment config", extra={"path": str(path)})
    return config


def load_synthetic_spec(path: Path) -> SyntheticEnvSpec:
    """Synthetic environment from the ``[synthetic]`` section (or the whole file).

    Raises:
        ConfigError: If validation fails
    """
    data = read_toml(path)
    section, prefix = (data["synthetic"], "synthetic") if "synthetic" in data else (data, "")
    try:
        return SyntheticEnvSpec.model_validate(section)
    except ConfigError:
        raise
    except ValidationError as e:
        raise config_error(e, prefix) from e
