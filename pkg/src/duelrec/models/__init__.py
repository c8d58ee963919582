"""Click-probability scorers, replay memory and SGD training."""

from typing import Optional, Sequence

from ..schemas.config import ScorerKind
from .base import Scorer
from .checkpoint import load_scorer, save_scorer, scorer_metadata
from .linear import LinearScorer
from .mlp import MLPScorer
from .per_arm import PerArmScorers
from .replay import ReplayBuffer, ReplayEntry, sample_minibatch
from .training import fit_minibatch, gradient_check, sgd_update


def build_scorer(
    kind: ScorerKind,
    context_dim: int,
    n_items: int,
    hidden: Sequence[int] = (64, 32),
    seed: Optional[int] = None,
    item_crosses: bool = False,
) -> Scorer:
    """Construct a freshly initialized scorer of the given kind.

    ``item_crosses`` applies to linear scorers only.
    """
    if kind is ScorerKind.MLP:
        return MLPScorer(context_dim, n_items, hidden=hidden, seed=seed)
    return LinearScorer(context_dim, n_items, seed=seed, item_crosses=item_crosses)


__all__ = [
    "LinearScorer",
    "MLPScorer",
    "PerArmScorers",
    "ReplayBuffer",
    "ReplayEntry",
    "Scorer",
    "build_scorer",
    "fit_minibatch",
    "gradient_check",
    "load_scorer",
    "sample_minibatch",
    "save_scorer",
    "scorer_metadata",
    "sgd_update",
]
