"""Base class for click-probability scorers.

All parameters live in one contiguous float64 vector; layers are views into
it. That vector is the flat parameter view dueling bandit exploration
perturbs and commits.
"""

import copy
from abc import ABC, abstractmethod
from typing import ClassVar, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import expit

from ..core.exceptions import DimensionMismatch, LengthMismatch
from ..schemas.config import ScorerKind


class Scorer(ABC):
    """Scores ``context ⊕ one-hot(item)`` with a sigmoid head.

    With ``n_items == 0`` the scorer is context-only (one model per arm).
    """

    kind: ClassVar[ScorerKind]

    def __init__(
        self,
        context_dim: int,
        n_items: int,
        seed: Optional[int] = None,
    ) -> None:
        """Initialize scorer.

        Args:
            context_dim: Encoded context length
            n_items: Number of items appended as one-hot; 0 for per-arm scorers
            seed: Initialization seed
        """
        self.context_dim = context_dim
        self.n_items = n_items
        self.input_dim = context_dim + n_items
        self._params = np.zeros(self._count_parameters(), dtype=np.float64)
        self._bind_views()
        self._initialize(np.random.default_rng(seed))

    @property
    @abstractmethod
    def layer_widths(self) -> List[int]:
        """Widths ``[input, ..., 1]``."""
        ...

    @abstractmethod
    def _count_parameters(self) -> int: ...

    @abstractmethod
    def _bind_views(self) -> None:
        """Point the layer arrays at slices of ``self._params``."""
        ...

    @abstractmethod
    def _initialize(self, rng: np.random.Generator) -> None: ...

    @abstractmethod
    def logits(self, inputs: np.ndarray) -> np.ndarray:
        """Pre-sigmoid outputs for a batch of inputs."""
        ...

    @abstractmethod
    def logit_gradient(
        self, inputs: np.ndarray, dlogits: np.ndarray
    ) -> np.ndarray:
        """Flat gradient of ``sum(dlogits * logits(inputs))`` w.r.t. the parameters."""
        ...

    @property
    def n_parameters(self) -> int:
        return self._params.shape[0]

    def flat_parameters(self) -> np.ndarray:
        """Copy of the flat parameter vector."""
        return self._params.copy()

    def set_flat_parameters(self, vector: np.ndarray) -> None:
        """Overwrite every parameter from a flat vector.

        Raises:
            LengthMismatch: If the vector has the wrong length
        """
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != self._params.shape:
            raise LengthMismatch(
                "parameter vector has the wrong length",
                params={"expected": self.n_parameters, "got": int(vector.size)},
            )
        self._params[:] = vector

    def clone(self) -> "Scorer":
        """Independent copy with equal parameters."""
        other = copy.copy(self)
        other._params = self._params.copy()
        other._bind_views()
        return other

    def build_inputs(self, context: np.ndarray, items: Sequence[int]) -> np.ndarray:
        """Stack ``context ⊕ one-hot(item)`` rows, one per item."""
        context = np.asarray(context, dtype=np.float64)
        if context.shape != (self.context_dim,):
            raise DimensionMismatch(
                "context has the wrong dimension",
                params={"expected": self.context_dim, "got": list(context.shape)},
            )
        inputs = np.zeros((len(items), self.input_dim))
        inputs[:, : self.context_dim] = context
        if self.n_items:
            items = np.asarray(items, dtype=np.int64)
            if items.size and (items.min() < 0 or items.max() >= self.n_items):
                raise DimensionMismatch(
                    "item index outside the vocabulary",
                    params={"n_items": self.n_items},
                )
            inputs[np.arange(len(items)), self.context_dim + items] = 1.0
        return inputs

    def predict(self, inputs: np.ndarray) -> np.ndarray:
        """Click probabilities for a batch of inputs."""
        inputs = np.atleast_2d(inputs)
        if inputs.shape[1] != self.input_dim:
            raise DimensionMismatch(
                "input has the wrong dimension",
                params={"expected": self.input_dim, "got": inputs.shape[1]},
            )
        return np.clip(expit(self.logits(inputs)), 1e-12, 1.0 - 1e-12)

    def score(self, context: np.ndarray, item: int) -> float:
        """Click probability of one item in one context."""
        return float(self.score_items(context, [item])[0])

    def score_items(self, context: np.ndarray, items: Sequence[int]) -> np.ndarray:
        """Click probabilities of several items in one context."""
        return self.predict(self.build_inputs(context, items))

    def loss_and_gradient(
        self,
        inputs: np.ndarray,
        targets: np.ndarray,
        sample_weight: Optional[np.ndarray] = None,
    ) -> Tuple[float, np.ndarray]:
        """Weighted mean binary cross-entropy and its flat gradient."""
        weights = (
            np.ones(len(targets)) if sample_weight is None else np.asarray(sample_weight)
        )
        total = weights.sum()
        raw = expit(self.logits(inputs))
        probs = np.clip(raw, 1e-12, 1.0 - 1e-12)
        losses = -(targets * np.log(probs) + (1.0 - targets) * np.log1p(-probs))
        loss = float((weights * losses).sum() / total)
        dlogits = weights * (raw - targets) / total
        return loss, self.logit_gradient(inputs, dlogits)
