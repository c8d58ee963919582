"""Online recommendation pipeline over a replayed stream.

Per trial: pick candidates (cluster-reduced after warmup when clustering is
on), ask the policy for a slate, reward it against the logged choice, feed
the reward back, and append one replay entry per slate item. Scheduled work
runs after the trial at stream positions that are multiples of
``schedule.interval_trials``:

* at ``warmup_trials``: supervised warm start on logged positives plus one
  sampled negative per trial;
* past warmup: a partial update on a minibatch sampled from replay memory;
* with clustering: fold the accumulated hits into item profiles and
  recluster.

Static policies skip the schedule and are fitted once when the stream reaches
the evaluation split.
"""

import logging
import math
from typing import List, Optional, Tuple, cast

import numpy as np

from ..clustering import candidate_items, recluster, update_item_profiles
from ..clustering.profiles import ItemProfiles
from ..core.config import settings
from ..core.metrics import (
    MODEL_UPDATES_TOTAL,
    RECLUSTER_SECONDS,
    SLATE_HITS_TOTAL,
    TRIALS_TOTAL,
)
from ..dataio.encoding import EncodedTrial
from ..models.replay import ReplayBuffer, ReplayEntry, sample_minibatch
from ..policies import Policy, build_policy
from ..policies.baselines import StaticLinearPolicy
from ..schemas.clustering import ClusterModel
from ..schemas.config import EngineConfig
from .outcome import TrialOutcome

logger = logging.getLogger(__name__)


def eval_split(n_trials: int, eval_fraction: float) -> int:
    """Index of the first evaluated trial (at least one trial is evaluated)."""
    n_eval = min(n_trials, max(1, math.ceil(eval_fraction * n_trials)))
    return n_trials - n_eval


class RecommendationEngine:
    """Owns the policy, replay memory, item profiles and cluster model."""

    def __init__(
        self,
        config: EngineConfig,
        context_dim: int,
        n_items: int,
        n_trials: Optional[int] = None,
    ) -> None:
        """Initialize engine.

        Args:
            config: Resolved engine configuration
            context_dim: Encoded context length
            n_items: Item vocabulary size
            n_trials: Stream length, needed by static policies for the split
        """
        self.config = config
        self.context_dim = context_dim
        self.n_items = n_items
        self.all_items = list(range(n_items))
        self.policy_label = config.policy.value

        policy_seq, engine_seq, init_seq = np.random.SeedSequence(config.seed).spawn(3)
        self.rng = np.random.default_rng(engine_seq)
        self.policy: Policy = build_policy(
            config,
            context_dim,
            n_items,
            np.random.default_rng(policy_seq),
            init_seed=int(init_seq.generate_state(1)[0]),
        )

        capacity = config.schedule.buffer_capacity or settings.REPLAY_BUFFER_CAP
        self.buffer = ReplayBuffer(capacity)
        self.position = 0

        self.static_cut = (
            eval_split(n_trials, config.eval_fraction)
            if self.policy.static and n_trials is not None
            else None
        )
        self._supervised_limit = (
            self.static_cut if self.policy.static else config.warmup_trials
        ) or 0
        self._supervised: List[Tuple[np.ndarray, int]] = []

        self.clustering = config.uses_clustering
        self.profiles: ItemProfiles = {}
        self._pending_hits: List[EncodedTrial] = []
        self.cluster_model: Optional[ClusterModel] = None
        self.n_reclusters = 0

    @property
    def past_warmup(self) -> bool:
        return self.position >= self.config.warmup_trials

    def candidates_for(self, context: np.ndarray) -> List[int]:
        if self.clustering and self.past_warmup:
            return candidate_items(context, self.cluster_model, self.all_items, self.config.k)
        return self.all_items

    def step(self, trial: EncodedTrial) -> TrialOutcome:
        """Process one trial and run any scheduled work that falls due."""
        k = self.config.k
        candidates = self.candidates_for(trial.context)
        slate = self.policy.select(self.position, trial.context, candidates, k)
        hit_slots = slate.hit_slots(trial.chosen_item)
        outcome = TrialOutcome(
            index=trial.index,
            slate=slate,
            chosen_item=trial.chosen_item,
            hit_slots=hit_slots,
            candidates_scored=len(candidates),
        )

        warming = not self.past_warmup
        if not warming:
            self.policy.feedback(slate, outcome.hit_slot)

        for item in slate.items:
            reward = 1 if item == trial.chosen_item else 0
            self.buffer.append(ReplayEntry(context=trial.context, item=item, reward=reward))

        if len(self._supervised) < self._supervised_limit:
            self._supervised.append((trial.context, trial.chosen_item))
        if self.clustering and (warming or outcome.reward):
            self._pending_hits.append(trial)

        TRIALS_TOTAL.labels(self.policy_label).inc()
        if outcome.reward:
            SLATE_HITS_TOTAL.labels(self.policy_label).inc()

        self.position += 1
        self._run_schedule()
        return outcome

    def _run_schedule(self) -> None:
        position = self.position
        schedule = self.config.schedule
        warmup = self.config.warmup_trials
        on_interval = position % schedule.interval_trials == 0

        if self.policy.static:
            if position == self.static_cut:
                self.fit_static()
            return

        warm_start_due = warmup > 0 and position == warmup
        if warm_start_due:
            self.warm_start()
        elif on_interval and position > warmup:
            self.partial_update()

        if self.clustering and position >= warmup and (on_interval or warm_start_due):
            self.refresh_clusters()

    def supervised_entries(self) -> List[ReplayEntry]:
        """Logged positives plus one uniformly sampled negative each."""
        entries = []
        for context, chosen in self._supervised:
            entries.append(ReplayEntry(context=context, item=chosen, reward=1))
            if self.n_items > 1:
                negative = int(self.rng.integers(self.n_items - 1))
                negative += negative >= chosen
                entries.append(ReplayEntry(context=context, item=negative, reward=0))
        return entries

    def warm_start(self) -> float:
        entries = self.supervised_entries()
        loss = self.policy.learn(entries, self.rng, epochs=self.config.schedule.warmup_epochs)
        self._supervised.clear()
        MODEL_UPDATES_TOTAL.labels(self.policy_label, "warm_start").inc()
        logger.info(
            "Warm start done",
            extra={"policy": self.policy_label, "entries": len(entries), "loss": loss},
        )
        return loss

    def partial_update(self) -> float:
        batch = sample_minibatch(self.buffer, self.config.schedule.minibatch_size, self.rng)
        loss = self.policy.learn(batch, self.rng)
        MODEL_UPDATES_TOTAL.labels(self.policy_label, "minibatch").inc()
        logger.info(
            "Partial update",
            extra={
                "policy": self.policy_label,
                "position": self.position,
                "batch": len(batch),
                "loss": loss,
            },
        )
        return loss

    def fit_static(self) -> float:
        policy = cast(StaticLinearPolicy, self.policy)
        entries = self.supervised_entries()
        loss = policy.fit_static(entries, self.rng)
        self._supervised.clear()
        MODEL_UPDATES_TOTAL.labels(self.policy_label, "static_fit").inc()
        logger.info(
            "Static policy fitted",
            extra={"policy": self.policy_label, "entries": len(entries), "loss": loss},
        )
        return loss

    def refresh_clusters(self) -> ClusterModel:
        for trial in self._pending_hits:
            update_item_profiles(self.profiles, trial, slate_hit=True)
        self._pending_hits.clear()
        with RECLUSTER_SECONDS.labels(self.policy_label).time():
            self.cluster_model = recluster(self.profiles, self.config.dbscan, self.all_items)
        self.n_reclusters += 1
        return self.cluster_model
