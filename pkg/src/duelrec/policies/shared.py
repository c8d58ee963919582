"""Policies built on one scorer over context and item one-hot."""

from typing import ClassVar, Optional, Sequence

import numpy as np

from ..models import build_scorer
from ..models.base import Scorer
from ..models.replay import ReplayEntry
from ..models.training import fit_minibatch
from ..schemas.config import ScorerKind
from .base import Policy


class SharedScorerPolicy(Policy):
    scorer_kind: ClassVar[ScorerKind] = ScorerKind.LINEAR

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self._scorer = build_scorer(
            self.scorer_kind,
            self.context_dim,
            self.n_items,
            hidden=self.config.scorer.mlp_hidden,
            seed=self.init_seed,
            item_crosses=self.config.scorer.linear_item_crosses,
        )

    @property
    def scorer(self) -> Scorer:
        return self._scorer

    def learn(
        self,
        entries: Sequence[ReplayEntry],
        rng: np.random.Generator,
        epochs: Optional[int] = None,
    ) -> float:
        schedule = self.config.schedule
        return fit_minibatch(
            self._scorer,
            entries,
            schedule.learning_rate,
            schedule.sgd_batch_size,
            epochs or schedule.epochs,
            rng,
        )
