"""Multilayer perceptron scorer with hand-written backprop."""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..schemas.config import ScorerKind
from .base import Scorer


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def relu_grad(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0, 1.0, 0.0)


class MLPScorer(Scorer):
    """ReLU hidden layers, one sigmoid output unit.

    Flat layout, layer by layer: ``W`` (out x in, row-major) then ``b``.
    """

    kind = ScorerKind.MLP

    def __init__(
        self,
        context_dim: int,
        n_items: int,
        hidden: Sequence[int] = (64, 32),
        seed: Optional[int] = None,
    ) -> None:
        self.hidden = list(hidden)
        super().__init__(context_dim, n_items, seed)

    @property
    def layer_widths(self) -> List[int]:
        return [self.input_dim, *self.hidden, 1]

    def _shapes(self) -> List[Tuple[int, int]]:
        widths = self.layer_widths
        return [(widths[i + 1], widths[i]) for i in range(len(widths) - 1)]

    def _count_parameters(self) -> int:
        return sum(out * (inp + 1) for out, inp in self._shapes())

    def _bind_views(self) -> None:
        self.weights: List[np.ndarray] = []
        self.biases: List[np.ndarray] = []
        offset = 0
        for out, inp in self._shapes():
            self.weights.append(self._params[offset : offset + out * inp].reshape(out, inp))
            offset += out * inp
            self.biases.append(self._params[offset : offset + out])
            offset += out

    def _initialize(self, rng: np.random.Generator) -> None:
        for W, b in zip(self.weights, self.biases):
            out, inp = W.shape
            limit = np.sqrt(6.0 / (inp + out))
            W[:] = rng.uniform(-limit, limit, size=W.shape)
            b[:] = 0.0

    def _forward(self, inputs: np.ndarray) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        activations = [inputs]
        pre_activations = []
        h = inputs
        last = len(self.weights) - 1
        for i, (W, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ W.T + b
            pre_activations.append(z)
            h = z if i == last else relu(z)
            activations.append(h)
        return activations, pre_activations

    def logits(self, inputs: np.ndarray) -> np.ndarray:
        activations, _ = self._forward(inputs)
        return activations[-1][:, 0]

    def logit_gradient(self, inputs: np.ndarray, dlogits: np.ndarray) -> np.ndarray:
        activations, pre_activations = self._forward(inputs)
        grads: List[np.ndarray] = []
        delta = dlogits[:, None]
        for i in range(len(self.weights) - 1, -1, -1):
            grads.append(delta.sum(axis=0))
            grads.append((delta.T @ activations[i]).ravel())
            if i > 0:
                delta = (delta @ self.weights[i]) * relu_grad(pre_activations[i - 1])
        # Collected last layer first, bias before weights; flip to flat layout.
        return np.concatenate(grads[::-1])
