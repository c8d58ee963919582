"""Deterministic trial streams."""

import logging
from collections import Counter
from typing import Iterator, Optional, Sequence

import numpy as np

from ..schemas.dataio import FeatureSchema, RawInteraction
from .encoding import EncodedTrial, encode

logger = logging.getLogger(__name__)


def stream(
    raws: Sequence[RawInteraction],
    schema: FeatureSchema,
    order_seed: Optional[int] = None,
) -> Iterator[EncodedTrial]:
    """Yield encoded trials in a reproducible order.

    Without a seed the order is timestamp-ascending (stable on ties); with a
    seed it is a seeded permutation of the log. ``index`` is the stream
    position, not the row number.

    Args:
        raws: Logged interactions
        schema: Fitted schema
        order_seed: Optional shuffle seed
    """
    if order_seed is None:
        order = sorted(range(len(raws)), key=lambda i: raws[i].timestamp)
    else:
        order = np.random.default_rng(order_seed).permutation(len(raws)).tolist()

    unknown: Counter = Counter()
    for position, row in enumerate(order):
        yield encode(raws[row], schema, index=position, unknown_counter=unknown)

    if unknown:
        logger.warning(
            "Unseen categorical values mapped to zero blocks",
            extra={"distinct": len(unknown), "occurrences": sum(unknown.values())},
        )


def materialize(
    raws: Sequence[RawInteraction],
    schema: FeatureSchema,
    order_seed: Optional[int] = None,
) -> list[EncodedTrial]:
    """Encode a whole log into a list."""
    return list(stream(raws, schema, order_seed))
