"""Active explorer: uncertainty-weighted sampling mixed with greedy slates."""

from typing import List, Optional, Sequence

import numpy as np

from ..models.per_arm import PerArmScorers
from ..models.replay import ReplayEntry
from ..schemas.config import PolicyId
from .base import Policy, Provenance, Slate
from .ranking import top_k_by_score

# Weights below this count as zero uncertainty.
MIN_WEIGHT = 1e-9


def uncertainty_weights(probabilities: np.ndarray) -> np.ndarray:
    """``p * (1 - p)``, with near-certain arms zeroed."""
    p = np.asarray(probabilities, dtype=float)
    weights = p * (1.0 - p)
    weights[weights < MIN_WEIGHT] = 0.0
    return weights


def active_explorer_select(
    scorers: PerArmScorers,
    context: np.ndarray,
    candidates: Sequence[int],
    k: int,
    rng: np.random.Generator,
    explore_share: float = 0.5,
) -> Slate:
    """Greedy with probability ``1 - explore_share``, else sample by uncertainty.

    Sampling is without replacement proportional to ``p(1-p)``. Slots left
    over when fewer than ``k`` arms are uncertain are filled greedily.
    """
    probabilities = scorers.member_scores(context, candidates)[:, 0]
    greedy = top_k_by_score(candidates, probabilities, len(candidates))

    if rng.random() >= explore_share:
        return Slate.uniform(greedy[:k], Provenance.EXPLOIT)

    weights = uncertainty_weights(probabilities)
    n_explore = min(k, int(np.count_nonzero(weights)))
    items: List[int] = []
    if n_explore:
        items = rng.choice(
            np.asarray(candidates),
            size=n_explore,
            replace=False,
            p=weights / weights.sum(),
        ).tolist()
    provenance = [Provenance.EXPLORE] * len(items)
    taken = set(items)
    for item in greedy:
        if len(items) == k:
            break
        if item not in taken:
            items.append(item)
            provenance.append(Provenance.EXPLOIT)
    return Slate(items=items, provenance=provenance)


class ActiveExplorerPolicy(Policy):
    policy_id = PolicyId.AE

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.scorers = PerArmScorers(self.n_items, self.context_dim, seed=self.init_seed)

    def select(self, trial_index, context, candidates, k) -> Slate:
        return active_explorer_select(
            self.scorers,
            context,
            candidates,
            k,
            self.rng,
            self.config.policy_config.ae_explore_share,
        )

    def learn(
        self,
        entries: Sequence[ReplayEntry],
        rng: np.random.Generator,
        epochs: Optional[int] = None,
    ) -> float:
        schedule = self.config.schedule
        return self.scorers.learn(
            entries,
            schedule.learning_rate,
            schedule.sgd_batch_size,
            epochs or schedule.epochs,
            rng,
        )
