"""One-vs-rest scorers: context-only linear models per arm.

Used by the bootstrapped baselines (several members per arm, each trained with
Poisson(1) sample weights) and by the active explorer (one member per arm).
"""

import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.special import expit

from .linear import LinearScorer
from .replay import ReplayEntry
from .training import fit_minibatch

logger = logging.getLogger(__name__)


class PerArmScorers:
    """``members[arm][j]`` is a LinearScorer over the context alone."""

    def __init__(
        self,
        n_arms: int,
        context_dim: int,
        n_members: int = 1,
        bootstrap: bool = False,
        seed: Optional[int] = None,
    ) -> None:
        self.n_arms = n_arms
        self.context_dim = context_dim
        self.n_members = n_members
        self.bootstrap = bootstrap
        seeds = np.random.SeedSequence(seed).spawn(n_arms * n_members)
        self.members: List[List[LinearScorer]] = [
            [
                LinearScorer(
                    context_dim,
                    0,
                    seed=int(seeds[a * n_members + j].generate_state(1)[0]),
                )
                for j in range(n_members)
            ]
            for a in range(n_arms)
        ]
        self._refresh()

    def _refresh(self) -> None:
        # Stacked copies for vectorized scoring; rebuilt after every update.
        self._weights = np.array(
            [[m.weights for m in arm] for arm in self.members]
        )
        self._biases = np.array([[m.bias[0] for m in arm] for arm in self.members])

    def member_scores(self, context: np.ndarray, arms: Sequence[int]) -> np.ndarray:
        """Probabilities, shape ``(len(arms), n_members)``."""
        arms = np.asarray(arms, dtype=np.int64)
        logits = self._weights[arms] @ np.asarray(context, dtype=float) + self._biases[arms]
        return np.clip(expit(logits), 1e-12, 1.0 - 1e-12)

    def learn(
        self,
        entries: Sequence[ReplayEntry],
        learning_rate: float,
        batch_size: int,
        epochs: int,
        rng: np.random.Generator,
    ) -> float:
        """Fit every arm on its own entries (in arm order, member order)."""
        by_arm: Dict[int, List[ReplayEntry]] = defaultdict(list)
        for entry in entries:
            by_arm[entry.item].append(entry)

        losses = []
        for arm in sorted(by_arm):
            arm_entries = by_arm[arm]
            for member in self.members[arm]:
                weights = (
                    rng.poisson(1.0, size=len(arm_entries)).astype(float)
                    if self.bootstrap
                    else None
                )
                losses.append(
                    fit_minibatch(
                        member,
                        arm_entries,
                        learning_rate,
                        batch_size,
                        epochs,
                        rng,
                        sample_weight=weights,
                    )
                )
        self._refresh()
        return float(np.mean(losses)) if losses else 0.0
