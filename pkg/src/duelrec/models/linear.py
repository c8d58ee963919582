"""Logistic-regression scorer."""

from typing import List, Optional, Tuple

import numpy as np

from ..schemas.config import ScorerKind
from .base import Scorer


class LinearScorer(Scorer):
    """``sigmoid(w . x + b)``, optionally plus ``context . V[item]``.

    The cross block ``V`` (one row of context weights per item) makes the
    model one-vs-rest logistic regression over the shared input, so rankings
    depend on the context. Flat layout: ``[w..., V (row-major)..., b]``.
    """

    kind = ScorerKind.LINEAR

    def __init__(
        self,
        context_dim: int,
        n_items: int,
        seed: Optional[int] = None,
        item_crosses: bool = False,
    ) -> None:
        self.item_crosses = item_crosses and n_items > 0
        super().__init__(context_dim, n_items, seed)

    @property
    def layer_widths(self) -> List[int]:
        return [self.input_dim, 1]

    @property
    def n_cross(self) -> int:
        return self.n_items * self.context_dim if self.item_crosses else 0

    def _count_parameters(self) -> int:
        return self.input_dim + self.n_cross + 1

    def _bind_views(self) -> None:
        d = self.input_dim
        self.weights = self._params[:d]
        self.crosses = self._params[d : d + self.n_cross].reshape(
            self.n_items if self.item_crosses else 0, self.context_dim
        )
        self.bias = self._params[d + self.n_cross :]

    def _initialize(self, rng: np.random.Generator) -> None:
        limit = np.sqrt(6.0 / (self.input_dim + 1))
        self.weights[:] = rng.uniform(-limit, limit, size=self.input_dim)
        self.crosses[:] = 0.0
        self.bias[:] = 0.0

    def _split(self, inputs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return inputs[:, : self.context_dim], inputs[:, self.context_dim :]

    def logits(self, inputs: np.ndarray) -> np.ndarray:
        out = inputs @ self.weights + self.bias[0]
        if self.item_crosses:
            context, one_hot = self._split(inputs)
            out = out + ((one_hot @ self.crosses) * context).sum(axis=1)
        return out

    def logit_gradient(self, inputs: np.ndarray, dlogits: np.ndarray) -> np.ndarray:
        parts = [dlogits @ inputs]
        if self.item_crosses:
            context, one_hot = self._split(inputs)
            parts.append((one_hot.T @ (dlogits[:, None] * context)).ravel())
        parts.append([dlogits.sum()])
        return np.concatenate(parts)
