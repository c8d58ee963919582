"""Deterministic top-k ranking."""

from typing import List, Optional, Sequence

import numpy as np

from ..core.exceptions import InsufficientItems
from ..models.base import Scorer


def top_k_by_score(items: Sequence[int], scores: np.ndarray, k: int) -> List[int]:
    """Highest scores first; ties go to the lower item index."""
    items = np.asarray(items, dtype=np.int64)
    order = np.lexsort((items, -np.asarray(scores, dtype=float)))
    return items[order[:k]].tolist()


def rank_top_k(
    scorer: Scorer,
    context: np.ndarray,
    candidates: Sequence[int],
    k: int,
    all_items: Optional[Sequence[int]] = None,
) -> List[int]:
    """Top ``k`` candidates by scorer probability.

    With fewer than ``k`` candidates the rest is padded from ``all_items``,
    again by score.

    Raises:
        InsufficientItems: If even the padded set is smaller than ``k``
    """
    if len(candidates) == 0:
        raise InsufficientItems("no candidates to rank", params={"k": k})

    ranked = top_k_by_score(candidates, scorer.score_items(context, candidates), k)
    if len(ranked) < k and all_items is not None:
        chosen = set(ranked)
        rest = [item for item in all_items if item not in chosen]
        if rest:
            ranked += top_k_by_score(
                rest, scorer.score_items(context, rest), k - len(ranked)
            )
    if len(ranked) < k:
        raise InsufficientItems(
            "fewer items than the slate size",
            params={"k": k, "available": len(ranked)},
        )
    return ranked
