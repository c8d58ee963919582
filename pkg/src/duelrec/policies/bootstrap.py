"""Bootstrapped UCB and Thompson sampling over per-arm ensembles.

Every arm owns ``m`` linear members trained with Poisson(1) sample weights
(online bootstrap). UCB ranks arms by a percentile of the member scores, TS
by the score of one member drawn per arm.
"""

import enum
from typing import Optional, Sequence

import numpy as np

from ..models.per_arm import PerArmScorers
from ..models.replay import ReplayEntry
from ..schemas.config import PolicyConfig, PolicyId
from .base import Policy, Provenance, Slate
from .ranking import top_k_by_score


class BootstrapMode(str, enum.Enum):
    UCB = "ucb"
    TS = "ts"


def bootstrap_statistics(
    member_scores: np.ndarray,
    mode: BootstrapMode,
    percentile: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Per-arm statistic from an ``(arms, members)`` score matrix.

    UCB uses the nearest-rank percentile.
    """
    if mode is BootstrapMode.UCB:
        return np.percentile(member_scores, percentile, axis=1, method="inverted_cdf")
    picks = rng.integers(member_scores.shape[1], size=member_scores.shape[0])
    return member_scores[np.arange(member_scores.shape[0]), picks]


def bootstrap_select(
    mode: BootstrapMode,
    ensembles: PerArmScorers,
    context: np.ndarray,
    candidates: Sequence[int],
    k: int,
    config: PolicyConfig,
    rng: np.random.Generator,
) -> Slate:
    scores = ensembles.member_scores(context, candidates)
    statistic = bootstrap_statistics(scores, mode, config.ucb_percentile, rng)
    return Slate.uniform(top_k_by_score(candidates, statistic, k), Provenance.EXPLOIT)


class BootstrapPolicy(Policy):
    policy_id = PolicyId.BUCB
    mode = BootstrapMode.UCB

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.ensembles = PerArmScorers(
            self.n_items,
            self.context_dim,
            n_members=self.config.policy_config.bootstrap_members,
            bootstrap=True,
            seed=self.init_seed,
        )

    def select(self, trial_index, context, candidates, k) -> Slate:
        return bootstrap_select(
            self.mode,
            self.ensembles,
            context,
            candidates,
            k,
            self.config.policy_config,
            self.rng,
        )

    def learn(
        self,
        entries: Sequence[ReplayEntry],
        rng: np.random.Generator,
        epochs: Optional[int] = None,
    ) -> float:
        schedule = self.config.schedule
        return self.ensembles.learn(
            entries,
            schedule.learning_rate,
            schedule.sgd_batch_size,
            epochs or schedule.epochs,
            rng,
        )


class BootstrapThompsonPolicy(BootstrapPolicy):
    policy_id = PolicyId.BTS
    mode = BootstrapMode.TS
