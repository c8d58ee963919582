"""Schema fitting and trial encoding."""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Set, Tuple

import numpy as np

from ..core.exceptions import EmptyLog, MissingField, MixedType, UnknownItem
from ..schemas.dataio import (
    CategoricalField,
    ContinuousField,
    FeatureSchema,
    RawInteraction,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EncodedTrial:
    """A logged interaction ready for the engine."""

    index: int
    context: np.ndarray
    chosen_item: int
    timestamp: int = 0


def fit_schema(raws: Sequence[RawInteraction]) -> FeatureSchema:
    """Fit vocabularies and continuous ranges on a log.

    Args:
        raws: Logged interactions

    Returns:
        Schema with lexicographically sorted vocabularies

    Raises:
        EmptyLog: If there are no rows
        MixedType: If a field is categorical in some rows and numeric in others
    """
    if not raws:
        raise EmptyLog("cannot fit a schema on an empty log")

    vocabularies: Dict[str, Set[str]] = {}
    ranges: Dict[str, Tuple[float, float]] = {}
    items: Set[str] = set()

    for raw in raws:
        for name, value in raw.categorical_values.items():
            vocabularies.setdefault(name, set()).add(value)
        for name, value in raw.continuous_values.items():
            lo, hi = ranges.get(name, (value, value))
            ranges[name] = (min(lo, value), max(hi, value))
        items.add(raw.chosen_item)

    mixed = sorted(set(vocabularies) & set(ranges))
    if mixed:
        raise MixedType(
            f"field {mixed[0]!r} has both numeric and non-numeric values",
            params={"fields": mixed},
        )

    schema = FeatureSchema(
        categorical_fields=[
            CategoricalField(name=name, vocabulary=sorted(values))
            for name, values in sorted(vocabularies.items())
        ],
        continuous_fields=[
            ContinuousField(name=name, min=lo, max=hi)
            for name, (lo, hi) in sorted(ranges.items())
        ],
        item_vocabulary=sorted(items),
    )
    logger.info(
        "Fitted feature schema",
        extra={
            "rows": len(raws),
            "context_dim": schema.context_dim,
            "items": schema.n_items,
        },
    )
    return schema


def encode(
    raw: RawInteraction,
    schema: FeatureSchema,
    index: int = 0,
    unknown_counter: Optional[Counter] = None,
) -> EncodedTrial:
    """Encode one raw interaction.

    Unseen categorical values leave their block all-zero and are counted in
    ``unknown_counter`` under ``(field, value)``.

    Raises:
        MissingField: If a schema field is absent from the row
        UnknownItem: If the chosen item is not in the item vocabulary
    """
    context = np.zeros(schema.context_dim, dtype=float)

    for field in schema.categorical_fields:
        if field.name not in raw.categorical_values:
            raise MissingField(
                f"missing categorical field {field.name!r}",
                params={"field": field.name, "user_id": raw.user_id},
            )
        value = raw.categorical_values[field.name]
        position = schema.value_index(field.name, value)
        if position is None:
            if unknown_counter is not None:
                unknown_counter[(field.name, value)] += 1
            logger.debug(
                "Unseen categorical value",
                extra={"field": field.name, "value": value},
            )
            continue
        context[schema.offset(field.name) + position] = 1.0

    for field in schema.continuous_fields:
        if field.name not in raw.continuous_values:
            raise MissingField(
                f"missing continuous field {field.name!r}",
                params={"field": field.name, "user_id": raw.user_id},
            )
        context[schema.offset(field.name)] = scale(
            raw.continuous_values[field.name], field.min, field.max
        )

    item = schema.item_index(raw.chosen_item)
    if item is None:
        raise UnknownItem(
            f"item {raw.chosen_item!r} is not in the item vocabulary",
            params={"item": raw.chosen_item},
        )
    return EncodedTrial(
        index=index, context=context, chosen_item=item, timestamp=raw.timestamp
    )


def scale(value: float, lo: float, hi: float) -> float:
    """Min-max scale into [0, 1], clamping out-of-range values."""
    if hi == lo:
        return 0.5
    return float(np.clip((value - lo) / (hi - lo), 0.0, 1.0))


def decode_categorical(
    context: np.ndarray, schema: FeatureSchema
) -> Dict[str, Optional[str]]:
    """Recover categorical values from a context (None for all-zero blocks)."""
    values: Dict[str, Optional[str]] = {}
    for field in schema.categorical_fields:
        start = schema.offset(field.name)
        block = context[start : start + len(field.vocabulary)]
        values[field.name] = field.vocabulary[int(block.argmax())] if block.any() else None
    return values
