"""Report and manifest schemas."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .config import EngineConfig


class RelativeCtrPoint(BaseModel):
    """One window of the relative-CTR trend."""

    window: int
    value: float


class MetricsReport(BaseModel):
    """Evaluation summary of one replay run.

    Contains no wall-clock data, so equal config, data and seed give
    byte-identical JSON.
    """

    policy: str
    k: int
    seed: int
    n_trials: int
    n_eval_trials: int
    per_item_ctr: Dict[str, float] = Field(default_factory=dict)
    avg_ctr: float
    precision_at_k: float
    relative_ctr_series: List[RelativeCtrPoint] = Field(default_factory=list)
    random_baseline_ctr: float
    mean_candidates_scored: float
    n_reclusters: int = 0
    final_cluster_count: int = 0
    last_dbscan_eps: Optional[float] = None
    config: EngineConfig


class RunManifest(BaseModel):
    """Everything needed to reproduce a set of output files."""

    command: str
    config_path: Optional[str] = None
    resolved_config: Dict[str, Any] = Field(default_factory=dict)
    data_path: Optional[str] = None
    data_fingerprint: Optional[str] = None
    output_paths: List[str] = Field(default_factory=list)
    output_fingerprints: Dict[str, str] = Field(default_factory=dict)
    duration_seconds: float
    version: str
