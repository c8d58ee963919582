"""Replay memory of (context, item, reward) triples."""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Union

import numpy as np

from ..core.exceptions import EmptyBuffer


@dataclass(frozen=True)
class ReplayEntry:
    context: np.ndarray
    item: int
    reward: int

    def __post_init__(self) -> None:
        if self.reward not in (0, 1):
            raise ValueError("reward must be 0 or 1")


class ReplayBuffer:
    """Bounded, insertion-ordered, evicts oldest first."""

    def __init__(self, capacity: int) -> None:
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._entries: List[ReplayEntry] = []
        self._start = 0

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, i: int) -> ReplayEntry:
        if not 0 <= i < len(self._entries):
            raise IndexError(i)
        return self._entries[(self._start + i) % len(self._entries)]

    def __iter__(self) -> Iterator[ReplayEntry]:
        for i in range(len(self)):
            yield self[i]

    def append(self, entry: ReplayEntry) -> None:
        if len(self._entries) < self.capacity:
            self._entries.append(entry)
            return
        self._entries[self._start] = entry
        self._start = (self._start + 1) % self.capacity

    def extend(self, entries: List[ReplayEntry]) -> None:
        for entry in entries:
            self.append(entry)


def sample_minibatch(
    buffer: ReplayBuffer,
    n: int,
    seed: Optional[Union[int, np.random.Generator]] = None,
) -> List[ReplayEntry]:
    """Uniform sample; without replacement when the buffer holds at least ``n``.

    Raises:
        EmptyBuffer: If the buffer is empty
    """
    if len(buffer) == 0:
        raise EmptyBuffer("cannot sample from an empty replay buffer")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if len(buffer) >= n:
        indices = rng.choice(len(buffer), size=n, replace=False)
    else:
        indices = rng.integers(len(buffer), size=n)
    return [buffer[int(i)] for i in indices]
