"""Pydantic schemas shared across modules."""

from .clustering import NOISE, ClusterModel
from .config import (
    CompareSection,
    DbscanParams,
    EngineConfig,
    EngineSection,
    ExperimentConfig,
    PolicyConfig,
    PolicyId,
    ScorerConfig,
    ScorerKind,
    UpdateSchedule,
)
from .dataio import (
    CategoricalField,
    ContinuousField,
    FeatureSchema,
    RawInteraction,
    SyntheticEnvSpec,
)
from .model import ScorerMetadata
from .report import MetricsReport, RelativeCtrPoint, RunManifest

__all__ = [
    "NOISE",
    "CategoricalField",
    "ClusterModel",
    "CompareSection",
    "ContinuousField",
    "DbscanParams",
    "EngineConfig",
    "EngineSection",
    "ExperimentConfig",
    "FeatureSchema",
    "MetricsReport",
    "PolicyConfig",
    "PolicyId",
    "RawInteraction",
    "RelativeCtrPoint",
    "RunManifest",
    "ScorerConfig",
    "ScorerKind",
    "ScorerMetadata",
    "SyntheticEnvSpec",
    "UpdateSchedule",
]
