"""Schemas for interaction logs, feature encoding and synthetic environments."""

from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from ..core.exceptions import InvalidPreferenceMatrix


class RawInteraction(BaseModel):
    """One logged interaction before encoding."""

    user_id: str
    timestamp: int = Field(..., description="Epoch milliseconds")
    categorical_values: Dict[str, str] = Field(default_factory=dict)
    continuous_values: Dict[str, float] = Field(default_factory=dict)
    chosen_item: str


class CategoricalField(BaseModel):
    """A one-hot encoded field."""

    name: str
    vocabulary: List[str]

    @model_validator(mode="after")
    def check_vocabulary(self) -> "CategoricalField":
        if len(set(self.vocabulary)) != len(self.vocabulary):
            raise ValueError(f"duplicate values in vocabulary of {self.name!r}")
        return self


class ContinuousField(BaseModel):
    """A min-max scaled field."""

    name: str
    min: float
    max: float

    @model_validator(mode="after")
    def check_range(self) -> "ContinuousField":
        if self.min > self.max:
            raise ValueError(f"min > max for {self.name!r}")
        return self


class FeatureSchema(BaseModel):
    """Encoding schema fitted on a log.

    Context layout: categorical blocks in field order, then one slot per
    continuous field.
    """

    model_config = ConfigDict(frozen=True)

    categorical_fields: List[CategoricalField] = Field(default_factory=list)
    continuous_fields: List[ContinuousField] = Field(default_factory=list)
    item_vocabulary: List[str]

    _item_index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _value_index: Dict[str, Dict[str, int]] = PrivateAttr(default_factory=dict)
    _offsets: Dict[str, int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def check_items(self) -> "FeatureSchema":
        if not self.item_vocabulary:
            raise ValueError("item_vocabulary must not be empty")
        if len(set(self.item_vocabulary)) != len(self.item_vocabulary):
            raise ValueError("duplicate item ids in item_vocabulary")
        return self

    def model_post_init(self, __context: object) -> None:
        self._item_index = {item: i for i, item in enumerate(self.item_vocabulary)}
        offset = 0
        for field in self.categorical_fields:
            self._offsets[field.name] = offset
            self._value_index[field.name] = {
                value: i for i, value in enumerate(field.vocabulary)
            }
            offset += len(field.vocabulary)
        for field in self.continuous_fields:
            self._offsets[field.name] = offset
            offset += 1

    @property
    def context_dim(self) -> int:
        """Length of every encoded context vector."""
        return sum(len(f.vocabulary) for f in self.categorical_fields) + len(
            self.continuous_fields
        )

    @property
    def n_items(self) -> int:
        return len(self.item_vocabulary)

    def item_index(self, item: str) -> Optional[int]:
        """Index of an item id, or None if unknown."""
        return self._item_index.get(item)

    def value_index(self, field: str, value: str) -> Optional[int]:
        """Position of a categorical value inside its block, or None if unseen."""
        return self._value_index[field].get(value)

    def offset(self, field: str) -> int:
        """Start of a field inside the context vector."""
        return self._offsets[field]


class SyntheticEnvSpec(BaseModel):
    """Latent-segment user model used to generate replay logs."""

    model_config = ConfigDict(extra="forbid")

    n_items: int = Field(20, ge=1)
    categorical_vocab_sizes: List[int] = Field(default_factory=lambda: [3, 4])
    n_continuous: int = Field(1, ge=0)
    n_latent_segments: int = Field(4, ge=1)
    segment_preference_matrix: Optional[List[List[float]]] = None
    preference_style: Literal["block", "dirichlet"] = "block"
    block_mass: float = Field(0.9, ge=0.0, le=1.0)
    dirichlet_alpha: float = Field(0.5, gt=0.0)
    segment_affinity: float = Field(
        0.7, ge=0.0, le=1.0, description="Probability of a segment's own categorical value"
    )
    continuous_noise: float = Field(0.1, ge=0.0)
    drift_period: Optional[int] = Field(None, ge=1)
    n_users: int = Field(1000, ge=1)
    start_timestamp: int = 1_600_000_000_000
    timestamp_step_ms: int = Field(1000, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def check_matrix(self) -> "SyntheticEnvSpec":
        if any(size < 1 for size in self.categorical_vocab_sizes):
            raise ValueError("categorical vocabulary sizes must be >= 1")
        if self.segment_preference_matrix is None:
            return self

        matrix = np.asarray(self.segment_preference_matrix, dtype=float)
        if matrix.shape != (self.n_latent_segments, self.n_items):
            raise InvalidPreferenceMatrix(
                "preference matrix shape must be segments x items",
                params={
                    "shape": list(matrix.shape),
                    "expected": [self.n_latent_segments, self.n_items],
                },
            )
        sums = matrix.sum(axis=1)
        if (matrix < 0).any() or not np.all(np.abs(sums - 1.0) <= 1e-9):
            raise InvalidPreferenceMatrix(
                "every preference row must be a probability distribution",
                params={"row_sums": sums.tolist()},
            )
        return self

    @property
    def n_categorical(self) -> int:
        return len(self.categorical_vocab_sizes)
