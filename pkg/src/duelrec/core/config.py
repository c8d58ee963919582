"""Configuration settings for the recommendation simulator."""

from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings, read from the environment (prefix ``DUELREC_``)."""

    model_config = SettingsConfigDict(
        env_prefix="DUELREC_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=True,
    )

    PROJECT_NAME: str = "duelrec"
    VERSION: str = "0.1.0"
    ENVIRONMENT: str = "development"

    # Outputs
    OUTPUT_PATH: Path = Path("results")
    PROMETHEUS_TEXTFILE: Optional[Path] = None

    # Execution
    COMPARE_WORKERS: int = 1
    REPLAY_BUFFER_CAP: int = 1_000_000

    @field_validator("COMPARE_WORKERS", "REPLAY_BUFFER_CAP")
    @classmethod
    def check_positive(cls, v: int) -> int:
        """Reject non-positive worker counts and buffer caps."""
        if v < 1:
            raise ValueError("must be >= 1")
        return v

    def get_run_path(self, out_dir: Optional[Path] = None) -> Path:
        """Get the directory a run writes into.

        Args:
            out_dir: Explicit output directory, overrides OUTPUT_PATH

        Returns:
            Path to the output directory
        """
        return Path(out_dir) if out_dir is not None else self.OUTPUT_PATH

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "json"
    LOGGING_CONFIG: Dict[str, Any] = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "json": {
                "()": "pythonjsonlogger.jsonlogger.JsonFormatter",
                "format": "%(asctime)s %(levelname)s %(name)s %(message)s",
            },
            "standard": {
                "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "formatter": "json",
                "stream": "ext://sys.stderr",
            },
        },
        "root": {
            "handlers": ["console"],
            "level": "INFO",
        },
    }


settings = Settings()
