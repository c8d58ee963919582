"""Interaction-log ingest, encoding, streaming and synthetic generation."""

from .csvlog import read_interactions, write_interactions
from .encoding import EncodedTrial, decode_categorical, encode, fit_schema, scale
from .stream import materialize, stream
from .synthetic import generate_synthetic, item_ids, preference_matrix

__all__ = [
    "EncodedTrial",
    "decode_categorical",
    "encode",
    "fit_schema",
    "generate_synthetic",
    "item_ids",
    "materialize",
    "preference_matrix",
    "read_interactions",
    "scale",
    "stream",
    "write_interactions",
]
