"""Replay evaluation metrics over trial outcomes."""

from collections import Counter
from typing import Dict, List, Sequence

import numpy as np

from ..schemas.report import RelativeCtrPoint
from .outcome import TrialOutcome


def item_counts(outcomes: Sequence[TrialOutcome]) -> tuple[Counter, Counter]:
    """(appearances, clicks) per item."""
    shown: Counter = Counter()
    clicks: Counter = Counter()
    for outcome in outcomes:
        shown.update(outcome.slate.items)
        clicks.update(outcome.slate.items[slot] for slot in outcome.hit_slots)
    return shown, clicks


def compute_ctr(outcomes: Sequence[TrialOutcome], item: int) -> float:
    """Clicks on ``item`` over slates containing it; 0 when never shown."""
    shown, clicks = item_counts(outcomes)
    return clicks[item] / shown[item] if shown[item] else 0.0


def per_item_ctr(outcomes: Sequence[TrialOutcome]) -> Dict[int, float]:
    """CTR of every item shown at least once, by ascending item index."""
    shown, clicks = item_counts(outcomes)
    return {item: clicks[item] / shown[item] for item in sorted(shown)}


def compute_avg_ctr(outcomes: Sequence[TrialOutcome]) -> float:
    """Mean per-item CTR over items shown at least once."""
    ctrs = per_item_ctr(outcomes)
    return float(np.mean(list(ctrs.values()))) if ctrs else 0.0


def compute_precision_at_k(outcomes: Sequence[TrialOutcome], k: int) -> float:
    """Mean of hits-in-slate / k."""
    if not outcomes:
        return 0.0
    return float(np.mean([len(outcome.hit_slots) / k for outcome in outcomes]))


def relative_ctr_series(
    outcomes: Sequence[TrialOutcome],
    window: int,
    baseline_ctr: float,
) -> List[RelativeCtrPoint]:
    """Windowed avg CTR divided by the random-policy CTR.

    Windows do not overlap; the last one may be short. A zero baseline gives
    zero-valued points.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    points = []
    for index, start in enumerate(range(0, len(outcomes), window)):
        ctr = compute_avg_ctr(outcomes[start : start + window])
        value = ctr / baseline_ctr if baseline_ctr > 0 else 0.0
        points.append(RelativeCtrPoint(window=index, value=value))
    return points
