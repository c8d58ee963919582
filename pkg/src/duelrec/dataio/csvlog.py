"""CSV interaction logs.

Required columns: ``user_id``, ``timestamp``, ``chosen_item``. Every other
column is auto-typed: all values numeric makes it continuous, none numeric
makes it categorical, anything in between is rejected.
"""

import logging
from pathlib import Path
from typing import Dict, List, Sequence

import pandas as pd

from ..core.exceptions import DataError, EmptyLog, MissingColumn, MissingField, MixedType
from ..schemas.dataio import RawInteraction

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("user_id", "timestamp", "chosen_item")


def read_interactions(path: Path) -> List[RawInteraction]:
    """Load a CSV log.

    Raises:
        DataError: If the file cannot be parsed
        MissingColumn: If a required column is absent
        EmptyLog: If the file has a header but no rows
        MixedType: If a feature column mixes numeric and non-numeric values
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataError(
            f"cannot read interaction log: {e}", params={"path": str(path)}
        ) from e

    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise MissingColumn(
            f"missing required column {missing[0]!r}",
            params={"columns": missing, "path": str(path)},
        )
    if frame.empty:
        raise EmptyLog("interaction log has no rows", params={"path": str(path)})

    timestamps = pd.to_numeric(frame["timestamp"], errors="coerce")
    if timestamps.isna().any():
        raise DataError(
            "timestamp column must be integer milliseconds",
            params={"path": str(path)},
        )

    categorical: Dict[str, pd.Series] = {}
    continuous: Dict[str, pd.Series] = {}
    for column in frame.columns:
        if column in REQUIRED_COLUMNS:
            continue
        numeric = pd.to_numeric(frame[column], errors="coerce")
        parsed = numeric.notna()
        if parsed.all():
            continuous[column] = numeric.astype(float)
        elif not parsed.any():
            categorical[column] = frame[column]
        else:
            raise MixedType(
                f"column {column!r} mixes numeric and non-numeric values",
                params={"column": column},
            )

    raws = [
        RawInteraction(
            user_id=frame["user_id"].iat[i],
            timestamp=int(timestamps.iat[i]),
            categorical_values={name: col.iat[i] for name, col in categorical.items()},
            continuous_values={name: float(col.iat[i]) for name, col in continuous.items()},
            chosen_item=frame["chosen_item"].iat[i],
        )
        for i in range(len(frame))
    ]
    logger.info(
        "Loaded interaction log",
        extra={
            "path": str(path),
            "rows": len(raws),
            "categorical": sorted(categorical),
            "continuous": sorted(continuous),
        },
    )
    return raws


def _field_column(raws: Sequence[RawInteraction], name: str, kind: str) -> List:
    values = []
    for raw in raws:
        row = raw.categorical_values if kind == "categorical" else raw.continuous_values
        if name not in row:
            raise MissingField(
                f"missing {kind} field {name!r}",
                params={"field": name, "user_id": raw.user_id},
            )
        values.append(row[name])
    return values


def write_interactions(raws: Sequence[RawInteraction], path: Path) -> None:
    """Write a log in the same CSV dialect ``read_interactions`` accepts.

    Raises:
        MissingField: If a row lacks a field that another row carries
    """
    categorical = sorted({name for r in raws for name in r.categorical_values})
    continuous = sorted({name for r in raws for name in r.continuous_values})
    frame = pd.DataFrame(
        {
            "user_id": [r.user_id for r in raws],
            "timestamp": [r.timestamp for r in raws],
            **{name: _field_column(raws, name, "categorical") for name in categorical},
            **{name: _field_column(raws, name, "continuous") for name in continuous},
            "chosen_item": [r.chosen_item for r in raws],
        }
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info("Wrote interaction log", extra={"path": str(path), "rows": len(raws)})
