"""Shared-scorer baselines: epsilon-greedy, explore-first, static LR, random."""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..core.exceptions import InsufficientItems
from ..models.base import Scorer
from ..models.replay import ReplayEntry
from ..schemas.config import PolicyId
from .base import Policy, Provenance, Slate
from .ranking import rank_top_k
from .shared import SharedScorerPolicy

logger = logging.getLogger(__name__)


def random_slate(candidates: Sequence[int], k: int, rng: np.random.Generator) -> List[int]:
    """``k`` distinct candidates, uniformly at random."""
    if len(candidates) < k:
        raise InsufficientItems(
            "fewer candidates than the slate size",
            params={"k": k, "available": len(candidates)},
        )
    return rng.choice(np.asarray(candidates), size=k, replace=False).tolist()


def epsilon_greedy_select(
    scorer: Scorer,
    context: np.ndarray,
    candidates: Sequence[int],
    k: int,
    epsilon: float,
    rng: np.random.Generator,
    all_items: Optional[Sequence[int]] = None,
) -> Slate:
    if rng.random() < epsilon:
        return Slate.uniform(random_slate(candidates, k, rng), Provenance.EXPLORE)
    return Slate.uniform(
        rank_top_k(scorer, context, candidates, k, all_items), Provenance.EXPLOIT
    )


def fee_select(
    trial_index: int,
    horizon: int,
    scorer: Scorer,
    context: np.ndarray,
    candidates: Sequence[int],
    k: int,
    rng: np.random.Generator,
    all_items: Optional[Sequence[int]] = None,
) -> Slate:
    """Uniform slates before ``horizon``, greedy from then on."""
    if trial_index < horizon:
        return Slate.uniform(random_slate(candidates, k, rng), Provenance.EXPLORE)
    return Slate.uniform(
        rank_top_k(scorer, context, candidates, k, all_items), Provenance.EXPLOIT
    )


def static_select(
    scorer: Scorer,
    context: np.ndarray,
    candidates: Sequence[int],
    k: int,
    all_items: Optional[Sequence[int]] = None,
) -> Slate:
    return Slate.uniform(
        rank_top_k(scorer, context, candidates, k, all_items), Provenance.EXPLOIT
    )


class EpsilonGreedyPolicy(SharedScorerPolicy):
    policy_id = PolicyId.EGREEDY

    def select(self, trial_index, context, candidates, k) -> Slate:
        return epsilon_greedy_select(
            self.scorer,
            context,
            candidates,
            k,
            self.config.policy_config.epsilon,
            self.rng,
            self.all_items,
        )


class ExploreFirstPolicy(SharedScorerPolicy):
    policy_id = PolicyId.FEE

    def select(self, trial_index, context, candidates, k) -> Slate:
        return fee_select(
            trial_index,
            self.config.policy_config.fee_explore_trials,
            self.scorer,
            context,
            candidates,
            k,
            self.rng,
            self.all_items,
        )


class StaticLinearPolicy(SharedScorerPolicy):
    """Logistic regression fitted once on the training split, then frozen."""

    policy_id = PolicyId.LR
    static = True

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.frozen = False

    def select(self, trial_index, context, candidates, k) -> Slate:
        return static_select(self.scorer, context, candidates, k, self.all_items)

    def fit_static(self, entries: Sequence[ReplayEntry], rng: np.random.Generator) -> float:
        """Train on the leading split and freeze."""
        loss = 0.0
        if entries:
            loss = super().learn(entries, rng, epochs=self.config.schedule.warmup_epochs)
        else:
            logger.warning("Static policy has an empty training split")
        self.frozen = True
        return loss

    def learn(self, entries, rng, epochs=None) -> float:
        return 0.0


class RandomPolicy(Policy):
    """Uniform random slates; the relative-CTR reference."""

    policy_id = PolicyId.RANDOM

    def select(self, trial_index, context, candidates, k) -> Slate:
        return Slate.uniform(random_slate(candidates, k, self.rng), Provenance.EXPLORE)
