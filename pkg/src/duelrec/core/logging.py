"""Logging setup."""

import copy
import logging
import logging.config
from typing import Optional

from .config import settings


def setup_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """Apply the configured dictConfig.

    Args:
        level: Overrides ``LOG_LEVEL`` when given
        fmt: ``json`` or ``standard``; overrides ``LOG_FORMAT`` when given
    """
    config = copy.deepcopy(settings.LOGGING_CONFIG)
    level = (level or settings.LOG_LEVEL).upper()
    fmt = fmt or settings.LOG_FORMAT
    if fmt not in config["formatters"]:
        fmt = "json"

    config["handlers"]["console"]["formatter"] = fmt
    config["root"]["level"] = level
    logging.config.dictConfig(config)
    logging.getLogger(__name__).debug(
        "Logging configured",
        extra={"level": level, "format": fmt},
    )
