"""Synthetic interaction logs from a latent-segment user model.

Each trial draws a latent segment. The segment shapes the context (a preferred
value per categorical field, a mean per continuous field) and the chosen item
(its row of the preference matrix). With ``drift_period`` set, the item
columns of the matrix are permuted every ``drift_period`` trials.
"""

import logging
from typing import List

import numpy as np

from ..schemas.dataio import RawInteraction, SyntheticEnvSpec

logger = logging.getLogger(__name__)


def item_ids(n_items: int) -> List[str]:
    """Zero-padded ids, so lexicographic order equals numeric order."""
    width = max(3, len(str(n_items - 1)))
    return [f"item_{i:0{width}d}" for i in range(n_items)]


def preference_matrix(spec: SyntheticEnvSpec, rng: np.random.Generator) -> np.ndarray:
    """The segments x items matrix at trial 0."""
    if spec.segment_preference_matrix is not None:
        return np.asarray(spec.segment_preference_matrix, dtype=float)

    n_seg, n_items = spec.n_latent_segments, spec.n_items
    if spec.preference_style == "dirichlet":
        return rng.dirichlet(np.full(n_items, spec.dirichlet_alpha), size=n_seg)

    owner = np.arange(n_items) * n_seg // n_items
    matrix = np.empty((n_seg, n_items))
    for s in range(n_seg):
        block = owner == s
        if not block.any():
            block = np.arange(n_items) == s % n_items
        n_block = int(block.sum())
        if n_block == n_items:
            row = np.full(n_items, 1.0 / n_items)
        else:
            row = np.where(
                block,
                spec.block_mass / n_block,
                (1.0 - spec.block_mass) / (n_items - n_block),
            )
        matrix[s] = row / row.sum()
    return matrix


def generate_synthetic(spec: SyntheticEnvSpec, n_trials: int) -> List[RawInteraction]:
    """Generate ``n_trials`` raw interactions, timestamp-ascending.

    User ids encode the latent segment as ``s<segment>u<user>``.
    """
    if n_trials <= 0:
        raise ValueError("n_trials must be positive")

    rng = np.random.default_rng(spec.seed)
    n_seg = spec.n_latent_segments
    items = item_ids(spec.n_items)
    preferences = preference_matrix(spec, rng)

    # Segment fingerprints in the context.
    preferred_values = [
        rng.permutation(max(size, n_seg))[:n_seg] % size
        for size in spec.categorical_vocab_sizes
    ]
    continuous_means = [
        rng.permutation(np.linspace(0.2, 0.8, n_seg)) for _ in range(spec.n_continuous)
    ]

    segments = rng.integers(n_seg, size=n_trials)
    users = rng.integers(spec.n_users, size=n_trials)

    categorical = []
    for f, size in enumerate(spec.categorical_vocab_sizes):
        keep = rng.random(n_trials) < spec.segment_affinity
        noise = rng.integers(size, size=n_trials)
        categorical.append(np.where(keep, preferred_values[f][segments], noise))

    continuous = [
        continuous_means[c][segments] + rng.normal(0.0, spec.continuous_noise, n_trials)
        for c in range(spec.n_continuous)
    ]

    chosen = np.empty(n_trials, dtype=int)
    period = spec.drift_period or n_trials
    for start in range(0, n_trials, period):
        if start > 0:
            preferences = preferences[:, rng.permutation(spec.n_items)]
            logger.debug("Preference drift", extra={"trial": start})
        stop = min(start + period, n_trials)
        cdf = np.cumsum(preferences, axis=1)
        cdf[:, -1] = 1.0
        draws = rng.random(stop - start)
        rows = cdf[segments[start:stop]]
        chosen[start:stop] = (draws[:, None] >= rows).sum(axis=1)

    raws = [
        RawInteraction(
            user_id=f"s{segments[t]}u{users[t]}",
            timestamp=spec.start_timestamp + t * spec.timestamp_step_ms,
            categorical_values={
                f"cat_{f}": f"cat_{f}_v{categorical[f][t]}"
                for f in range(spec.n_categorical)
            },
            continuous_values={
                f"num_{c}": float(continuous[c][t]) for c in range(spec.n_continuous)
            },
            chosen_item=items[chosen[t]],
        )
        for t in range(n_trials)
    ]
    logger.info(
        "Generated synthetic log",
        extra={"trials": n_trials, "items": spec.n_items, "segments": n_seg},
    )
    return raws
