"""Slates and the policy interface."""

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import ClassVar, List, Optional, Sequence

import numpy as np

from ..core.exceptions import PolicyError
from ..models.base import Scorer
from ..models.replay import ReplayEntry
from ..schemas.config import EngineConfig, PolicyId


class Provenance(str, enum.Enum):
    """Which ranking contributed a slate slot."""

    EXPLOIT = "exploit"
    EXPLORE = "explore"


@dataclass(frozen=True)
class Slate:
    """Ordered, duplicate-free items shown in one trial."""

    items: List[int]
    provenance: List[Provenance] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(set(self.items)) != len(self.items):
            raise PolicyError("slate contains duplicate items", params={"items": self.items})
        if len(self.provenance) != len(self.items):
            raise PolicyError(
                "provenance length differs from slate length",
                params={"items": len(self.items), "provenance": len(self.provenance)},
            )

    @classmethod
    def uniform(cls, items: Sequence[int], provenance: Provenance) -> "Slate":
        items = [int(i) for i in items]
        return cls(items=items, provenance=[provenance] * len(items))

    @property
    def k(self) -> int:
        return len(self.items)

    def hit_slots(self, chosen_item: int) -> List[int]:
        """Slots holding the logged choice (at most one for single-choice logs)."""
        return [slot for slot, item in enumerate(self.items) if item == chosen_item]


class Policy(ABC):
    """Chooses a slate per trial and learns from replayed feedback.

    The engine calls ``select`` then ``feedback`` once per trial and ``learn``
    at scheduled updates. ``rng`` drives selection only; training randomness
    comes from the generator the engine passes to ``learn``.
    """

    policy_id: ClassVar[PolicyId]
    #: Trained once on the leading split and never updated afterwards.
    static: ClassVar[bool] = False

    def __init__(
        self,
        config: EngineConfig,
        context_dim: int,
        n_items: int,
        rng: np.random.Generator,
        init_seed: Optional[int] = None,
    ) -> None:
        self.config = config
        self.context_dim = context_dim
        self.n_items = n_items
        self.all_items = list(range(n_items))
        self.rng = rng
        self.init_seed = init_seed

    @property
    def scorer(self) -> Optional[Scorer]:
        """The shared scorer, for policies that have one."""
        return None

    @abstractmethod
    def select(
        self,
        trial_index: int,
        context: np.ndarray,
        candidates: Sequence[int],
        k: int,
    ) -> Slate: ...

    def feedback(self, slate: Slate, hit_slot: Optional[int]) -> None:
        """Observe the reward of the last selected slate."""
        return None

    def learn(
        self,
        entries: Sequence[ReplayEntry],
        rng: np.random.Generator,
        epochs: Optional[int] = None,
    ) -> float:
        """Supervised update on replayed entries; returns the mean loss."""
        return 0.0
