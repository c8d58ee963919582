"""Replay engine and evaluation metrics."""

from .metrics import (
    compute_avg_ctr,
    compute_ctr,
    compute_precision_at_k,
    per_item_ctr,
    relative_ctr_series,
)
from .outcome import TrialOutcome
from .pipeline import RecommendationEngine, eval_split
from .replay import ReplayResult, random_baseline_ctr, replay_stream, run_replay, simulate
from .reports import (
    cluster_model_path,
    comparison_table,
    read_cluster_model,
    report_path,
    series_path,
    write_cluster_model,
    write_comparison_table,
    write_report,
    write_series,
)

__all__ = [
    "RecommendationEngine",
    "ReplayResult",
    "TrialOutcome",
    "cluster_model_path",
    "comparison_table",
    "compute_avg_ctr",
    "compute_ctr",
    "compute_precision_at_k",
    "eval_split",
    "per_item_ctr",
    "random_baseline_ctr",
    "read_cluster_model",
    "relative_ctr_series",
    "replay_stream",
    "report_path",
    "run_replay",
    "series_path",
    "simulate",
    "write_cluster_model",
    "write_comparison_table",
    "write_report",
    "write_series",
]
