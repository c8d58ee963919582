"""Experiment configuration schemas.

One model per config-file section. Unknown keys are rejected everywhere.
"""

import enum
import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .dataio import SyntheticEnvSpec


class PolicyId(str, enum.Enum):
    """Slate-selection policies, valued by their short id."""

    LR = "lr"
    BUCB = "bucb"
    BTS = "bts"
    EGREEDY = "egreedy"
    FEE = "fee"
    AE = "ae"
    DB_LR = "db_lr"
    DB_DNN = "db_dnn"
    DBSCAN_DB_DNN = "dbscan_db_dnn"
    RANDOM = "random"


class ScorerKind(str, enum.Enum):
    """Base click model family."""

    LINEAR = "linear"
    MLP = "mlp"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DbscanParams(_Section):
    """Density clustering parameters. ``eps=None`` means data-driven default."""

    eps: Optional[float] = Field(None, gt=0.0)
    min_pts: int = Field(4, ge=1)
    eps_median_factor: float = Field(0.5, gt=0.0)

    @field_validator("eps")
    @classmethod
    def check_finite(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not math.isfinite(v):
            raise ValueError("eps must be finite")
        return v


class UpdateSchedule(_Section):
    """Partial-update cadence and SGD settings."""

    minibatch_size: int = Field(1000, ge=1)
    interval_trials: int = Field(5000, ge=1)
    learning_rate: float = Field(0.1, gt=0.0)
    sgd_batch_size: int = Field(32, ge=1)
    epochs: int = Field(3, ge=1)
    warmup_epochs: int = Field(3, ge=1)
    buffer_capacity: Optional[int] = Field(None, ge=1)


class ScorerConfig(_Section):
    """Architecture of the shared scorer."""

    mlp_hidden: List[int] = Field(default_factory=lambda: [64, 32])
    linear_item_crosses: bool = True

    @field_validator("mlp_hidden")
    @classmethod
    def check_widths(cls, v: List[int]) -> List[int]:
        if any(w < 1 for w in v):
            raise ValueError("hidden widths must be >= 1")
        return v


class PolicyConfig(_Section):
    """Exploration hyperparameters for every policy family."""

    epsilon: float = Field(0.2, ge=0.0, le=1.0)
    fee_explore_trials: int = Field(5000, ge=0)
    bootstrap_members: int = Field(10, ge=2)
    ucb_percentile: float = Field(80.0, gt=50.0, lt=100.0)
    active_explorer_mode: Literal["weighted"] = "weighted"
    ae_explore_share: float = Field(0.5, ge=0.0, le=1.0)
    delta: float = Field(1.0, gt=0.0)
    beta: float = Field(0.05, gt=0.0)

    @field_validator("delta", "beta")
    @classmethod
    def check_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("must be finite")
        return v


class EngineConfig(BaseModel):
    """Everything a single replay run needs."""

    model_config = ConfigDict(extra="forbid")

    k: int = Field(..., ge=1)
    policy: PolicyId
    policy_config: PolicyConfig = Field(default_factory=PolicyConfig)
    clustering_enabled: bool = False
    dbscan: DbscanParams = Field(default_factory=DbscanParams)
    schedule: UpdateSchedule = Field(default_factory=UpdateSchedule)
    scorer: ScorerConfig = Field(default_factory=ScorerConfig)
    warmup_trials: int = Field(5000, ge=0)
    eval_fraction: float = Field(0.3, gt=0.0, lt=1.0)
    series_window: int = Field(1000, ge=1)
    order_seed: Optional[int] = None
    seed: int = 0

    @property
    def uses_clustering(self) -> bool:
        """Clustering is on when requested or implied by the policy."""
        return self.clustering_enabled or self.policy == PolicyId.DBSCAN_DB_DNN


class EngineSection(_Section):
    """The ``[engine]`` section as written in a config file."""

    k: int = Field(..., ge=1)
    policy: PolicyId
    clustering_enabled: bool = False
    warmup_trials: int = Field(5000, ge=0)
    eval_fraction: float = Field(0.3, gt=0.0, lt=1.0)
    series_window: int = Field(1000, ge=1)
    order_seed: Optional[int] = None
    seed: int = 0


class CompareSection(_Section):
    """The ``[compare]`` section: the policy x k x seed matrix."""

    policies: List[PolicyId] = Field(
        default_factory=lambda: [
            PolicyId.LR,
            PolicyId.BUCB,
            PolicyId.BTS,
            PolicyId.EGREEDY,
            PolicyId.FEE,
            PolicyId.AE,
            PolicyId.DB_LR,
            PolicyId.DB_DNN,
            PolicyId.DBSCAN_DB_DNN,
        ]
    )
    ks: List[int] = Field(default_factory=lambda: [1, 3])
    seeds: List[int] = Field(default_factory=lambda: [1])

    @model_validator(mode="after")
    def check_non_empty(self) -> "CompareSection":
        if not self.policies or not self.ks or not self.seeds:
            raise ValueError("policies, ks and seeds must be non-empty")
        if any(k < 1 for k in self.ks):
            raise ValueError("every k must be >= 1")
        return self


class ExperimentConfig(_Section):
    """A whole config file."""

    engine: EngineSection
    policy: PolicyConfig = Field(default_factory=PolicyConfig)
    dbscan: DbscanParams = Field(default_factory=DbscanParams)
    schedule: UpdateSchedule = Field(default_factory=UpdateSchedule)
    scorer: ScorerConfig = Field(default_factory=ScorerConfig)
    compare: CompareSection = Field(default_factory=CompareSection)
    synthetic: Optional[SyntheticEnvSpec] = None

    def engine_config(
        self,
        *,
        policy: Optional[PolicyId] = None,
        k: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> EngineConfig:
        """Resolve an EngineConfig, applying CLI-style overrides."""
        section = self.engine
        return EngineConfig(
            k=k if k is not None else section.k,
            policy=policy if policy is not None else section.policy,
            policy_config=self.policy,
            clustering_enabled=section.clustering_enabled,
            dbscan=self.dbscan,
            schedule=self.schedule,
            scorer=self.scorer,
            warmup_trials=section.warmup_trials,
            eval_fraction=section.eval_fraction,
            series_window=section.series_window,
            order_seed=section.order_seed,
            seed=seed if seed is not None else section.seed,
        )
