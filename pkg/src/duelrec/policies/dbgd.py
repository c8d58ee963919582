"""Dueling Bandit Gradient Descent with probabilistic interleaving.

Each trial perturbs the exploit scorer's flat parameters along a random unit
direction ``u``, ranks the candidates with both scorers and interleaves the
two lists slot by slot. When the user's hit lands on a slot contributed by
the perturbed scorer, the exploit parameters move ``beta * delta * u``.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import InsufficientItems
from ..models.base import Scorer
from ..schemas.config import PolicyId, ScorerKind
from .base import Provenance, Slate
from .ranking import rank_top_k
from .shared import SharedScorerPolicy

logger = logging.getLogger(__name__)


@dataclass
class DbgdState:
    exploit_scorer: Scorer
    delta: float
    beta: float
    rng: np.random.Generator

    def __post_init__(self) -> None:
        for name in ("delta", "beta"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive")


def dbgd_propose(state: DbgdState) -> Tuple[Scorer, np.ndarray]:
    """Explore scorer at ``P + delta * u`` with ``u`` uniform on the unit sphere."""
    base = state.exploit_scorer.flat_parameters()
    u = state.rng.standard_normal(base.size)
    norm = np.linalg.norm(u)
    while norm == 0.0:
        u = state.rng.standard_normal(base.size)
        norm = np.linalg.norm(u)
    u /= norm

    explore = state.exploit_scorer.clone()
    explore.set_flat_parameters(base + state.delta * u)
    return explore, u


def probabilistic_interleave(
    list_m: Sequence[int],
    list_m_prime: Sequence[int],
    k: int,
    rng: np.random.Generator,
) -> Slate:
    """Fill ``k`` slots, each from a fair-coin source list.

    The chosen source contributes its highest-ranked unused item; an exhausted
    source yields to the other one.

    Raises:
        InsufficientItems: If the lists hold fewer than ``k`` distinct items
    """
    available = len(set(list_m) | set(list_m_prime))
    if available < k:
        raise InsufficientItems(
            "interleaved lists hold fewer distinct items than the slate size",
            params={"k": k, "available": available},
        )

    sources = {Provenance.EXPLOIT: list(list_m), Provenance.EXPLORE: list(list_m_prime)}
    cursors = {Provenance.EXPLOIT: 0, Provenance.EXPLORE: 0}
    used = set()
    items: List[int] = []
    provenance: List[Provenance] = []

    def next_unused(source: Provenance) -> Optional[int]:
        ranked = sources[source]
        while cursors[source] < len(ranked) and ranked[cursors[source]] in used:
            cursors[source] += 1
        return ranked[cursors[source]] if cursors[source] < len(ranked) else None

    for _ in range(k):
        source = Provenance.EXPLOIT if rng.random() < 0.5 else Provenance.EXPLORE
        item = next_unused(source)
        if item is None:
            source = (
                Provenance.EXPLORE if source is Provenance.EXPLOIT else Provenance.EXPLOIT
            )
            item = next_unused(source)
        used.add(item)
        items.append(int(item))
        provenance.append(source)

    return Slate(items=items, provenance=provenance)


def dbgd_feedback(
    state: DbgdState,
    slate: Slate,
    hit_slot: Optional[int],
    direction: np.ndarray,
) -> DbgdState:
    """Step toward the perturbation when the hit slot came from it."""
    if hit_slot is None or slate.provenance[hit_slot] is not Provenance.EXPLORE:
        return state
    params = state.exploit_scorer.flat_parameters()
    state.exploit_scorer.set_flat_parameters(params + state.beta * state.delta * direction)
    return state


class DbgdPolicy(SharedScorerPolicy):
    """DBGD over the shared scorer."""

    policy_id = PolicyId.DB_LR

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        policy = self.config.policy_config
        self.state = DbgdState(
            exploit_scorer=self.scorer,
            delta=policy.delta,
            beta=policy.beta,
            rng=self.rng,
        )
        self._direction: Optional[np.ndarray] = None
        self.moves = 0

    def select(
        self,
        trial_index: int,
        context: np.ndarray,
        candidates: Sequence[int],
        k: int,
    ) -> Slate:
        explore, self._direction = dbgd_propose(self.state)
        list_m = rank_top_k(self.scorer, context, candidates, k, self.all_items)
        list_m_prime = rank_top_k(explore, context, candidates, k, self.all_items)
        return probabilistic_interleave(list_m, list_m_prime, k, self.rng)

    def feedback(self, slate: Slate, hit_slot: Optional[int]) -> None:
        if self._direction is None:
            return
        if hit_slot is not None and slate.provenance[hit_slot] is Provenance.EXPLORE:
            self.moves += 1
        dbgd_feedback(self.state, slate, hit_slot, self._direction)
        self._direction = None


class DbgdMlpPolicy(DbgdPolicy):
    policy_id = PolicyId.DB_DNN
    scorer_kind = ScorerKind.MLP


class ClusteredDbgdMlpPolicy(DbgdMlpPolicy):
    """DBGD + MLP over cluster-reduced candidates."""

    policy_id = PolicyId.DBSCAN_DB_DNN
