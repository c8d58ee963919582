"""Exception hierarchy.

Every error carries the ``{detail, error_code, params}`` triple so the CLI can
print one consistent payload and map families to exit codes.
"""

from typing import Any, Dict, Optional


class DuelRecError(Exception):
    """Base error."""

    error_code: str = "DUELREC_ERROR"

    def __init__(self, detail: str, params: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(detail)
        self.detail = detail
        self.params = params or {}

    def to_dict(self) -> Dict[str, Any]:
        """Error payload."""
        return {
            "detail": self.detail,
            "error_code": self.error_code,
            "params": self.params,
        }


# Configuration


class ConfigError(DuelRecError):
    """Invalid, unknown or missing configuration."""

    error_code = "CONFIG_ERROR"


class InvalidPreferenceMatrix(ConfigError):
    """Synthetic preference rows are not stochastic."""

    error_code = "INVALID_PREFERENCE_MATRIX"


# Data


class DataError(DuelRecError):
    """Problem with an interaction log or encoded stream."""

    error_code = "DATA_ERROR"


class EmptyLog(DataError):
    error_code = "EMPTY_LOG"


class MixedType(DataError):
    error_code = "MIXED_TYPE"


class MissingField(DataError):
    error_code = "MISSING_FIELD"


class MissingColumn(DataError):
    error_code = "MISSING_COLUMN"


class UnknownItem(DataError):
    error_code = "UNKNOWN_ITEM"


class EmptyStream(DataError):
    error_code = "EMPTY_STREAM"


# Models


class ModelError(DuelRecError):
    """Scorer or replay-buffer misuse."""

    error_code = "MODEL_ERROR"


class DimensionMismatch(ModelError):
    error_code = "DIMENSION_MISMATCH"


class LengthMismatch(ModelError):
    error_code = "LENGTH_MISMATCH"


class NonFiniteLoss(ModelError):
    error_code = "NON_FINITE_LOSS"


class EmptyBuffer(ModelError):
    error_code = "EMPTY_BUFFER"


# Policies


class PolicyError(DuelRecError):
    error_code = "POLICY_ERROR"


class InsufficientItems(PolicyError):
    """Not enough distinct items to fill a slate."""

    error_code = "INSUFFICIENT_ITEMS"
