"""Per-trial result record."""

from dataclasses import dataclass, field
from typing import List, Optional

from ..policies.base import Slate


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    slate: Slate
    chosen_item: int
    hit_slots: List[int] = field(default_factory=list)
    candidates_scored: int = 0

    @property
    def reward(self) -> int:
        return 1 if self.hit_slots else 0

    @property
    def hit_slot(self) -> Optional[int]:
        return self.hit_slots[0] if self.hit_slots else None
