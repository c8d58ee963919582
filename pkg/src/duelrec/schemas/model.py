"""Scorer checkpoint metadata."""

from typing import List

from pydantic import BaseModel

from .config import ScorerKind


class ScorerMetadata(BaseModel):
    """JSON sidecar written next to a binary scorer checkpoint."""

    kind: ScorerKind
    item_crosses: bool = False
    context_dim: int
    n_items: int
    layer_widths: List[int]
    n_parameters: int
    dtype: str = "<f8"
    format_version: int = 1
