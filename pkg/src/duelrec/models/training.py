"""SGD updates and gradient verification."""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import NonFiniteLoss
from .base import Scorer
from .replay import ReplayEntry

logger = logging.getLogger(__name__)


def batch_arrays(
    scorer: Scorer, batch: Sequence[ReplayEntry]
) -> Tuple[np.ndarray, np.ndarray]:
    """Model inputs and targets for a batch of entries."""
    inputs = np.vstack(
        [scorer.build_inputs(entry.context, [entry.item]) for entry in batch]
    )
    targets = np.fromiter((entry.reward for entry in batch), dtype=float, count=len(batch))
    return inputs, targets


def sgd_update(
    scorer: Scorer,
    batch: Sequence[ReplayEntry],
    learning_rate: float,
    sample_weight: Optional[np.ndarray] = None,
) -> float:
    """One gradient step on the (weighted) mean cross-entropy of a batch.

    Returns:
        The loss before the step
    """
    if not batch:
        raise ValueError("batch must not be empty")
    if learning_rate <= 0:
        raise ValueError("learning_rate must be positive")

    inputs, targets = batch_arrays(scorer, batch)
    loss, gradient = scorer.loss_and_gradient(inputs, targets, sample_weight)
    if not math.isfinite(loss) or not np.all(np.isfinite(gradient)):
        raise NonFiniteLoss("loss or gradient is not finite", params={"loss": loss})
    scorer.set_flat_parameters(scorer.flat_parameters() - learning_rate * gradient)
    return loss


def fit_minibatch(
    scorer: Scorer,
    entries: Sequence[ReplayEntry],
    learning_rate: float,
    batch_size: int,
    epochs: int,
    rng: np.random.Generator,
    sample_weight: Optional[np.ndarray] = None,
) -> float:
    """Shuffled passes of ``sgd_update`` over ``entries`` in chunks.

    Chunks whose weights sum to zero are skipped.

    Returns:
        Mean pre-step loss over the chunks (0.0 if no step was taken)
    """
    weights = None if sample_weight is None else np.asarray(sample_weight, dtype=float)
    losses = []
    for _ in range(epochs):
        order = rng.permutation(len(entries))
        for start in range(0, len(order), batch_size):
            chunk = order[start : start + batch_size]
            chunk_weights = None if weights is None else weights[chunk]
            if chunk_weights is not None and chunk_weights.sum() <= 0:
                continue
            losses.append(
                sgd_update(
                    scorer,
                    [entries[i] for i in chunk],
                    learning_rate,
                    chunk_weights,
                )
            )
    return float(np.mean(losses)) if losses else 0.0


def gradient_check(scorer: Scorer, entry: ReplayEntry, h: float = 1e-5) -> float:
    """Compare backprop against central finite differences on every parameter.

    Returns:
        max |analytic - numeric| / max(1e-8, |analytic| + |numeric|)
    """
    inputs, targets = batch_arrays(scorer, [entry])
    base = scorer.flat_parameters()
    _, analytic = scorer.loss_and_gradient(inputs, targets)

    numeric = np.empty_like(base)
    perturbed = scorer.clone()
    for i in range(base.size):
        shifted = base.copy()
        shifted[i] = base[i] + h
        perturbed.set_flat_parameters(shifted)
        plus, _ = perturbed.loss_and_gradient(inputs, targets)
        shifted[i] = base[i] - h
        perturbed.set_flat_parameters(shifted)
        minus, _ = perturbed.loss_and_gradient(inputs, targets)
        numeric[i] = (plus - minus) / (2.0 * h)

    errors = np.abs(analytic - numeric) / np.maximum(1e-8, np.abs(analytic) + np.abs(numeric))
    worst = float(errors.max()) if errors.size else 0.0
    logger.debug(
        "Gradient check",
        extra={"kind": scorer.kind.value, "parameters": base.size, "max_rel_error": worst},
    )
    return worst
