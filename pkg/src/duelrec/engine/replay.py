"""Whole-stream replay runs."""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from ..core.exceptions import ConfigError, EmptyStream
from ..dataio.encoding import EncodedTrial
from ..schemas.config import EngineConfig, PolicyId
from ..schemas.dataio import FeatureSchema
from ..schemas.report import MetricsReport
from .metrics import (
    compute_avg_ctr,
    compute_precision_at_k,
    per_item_ctr,
    relative_ctr_series,
)
from .outcome import TrialOutcome
from .pipeline import RecommendationEngine, eval_split

logger = logging.getLogger(__name__)


@dataclass
class ReplayResult:
    report: MetricsReport
    engine: RecommendationEngine
    outcomes: List[TrialOutcome]


def _check_inputs(trials: List[EncodedTrial], config: EngineConfig, schema: FeatureSchema) -> None:
    if not trials:
        raise EmptyStream("the trial stream is empty")
    if config.k > schema.n_items:
        raise ConfigError(
            "engine.k exceeds the number of items",
            params={"key": "engine.k", "k": config.k, "n_items": schema.n_items},
        )


def simulate(
    trials: List[EncodedTrial],
    config: EngineConfig,
    schema: FeatureSchema,
) -> tuple[RecommendationEngine, List[TrialOutcome]]:
    """Run the engine over every trial, in order."""
    engine = RecommendationEngine(config, schema.context_dim, schema.n_items, len(trials))
    outcomes = [engine.step(trial) for trial in trials]
    return engine, outcomes


def random_baseline_ctr(
    trials: List[EncodedTrial],
    config: EngineConfig,
    schema: FeatureSchema,
) -> float:
    """Avg CTR of uniform random slates over the whole stream (same k and seed)."""
    _check_inputs(trials, config, schema)
    baseline = config.model_copy(
        update={"policy": PolicyId.RANDOM, "clustering_enabled": False}
    )
    _, outcomes = simulate(trials, baseline, schema)
    return compute_avg_ctr(outcomes)


def replay_stream(
    trials: Iterable[EncodedTrial],
    config: EngineConfig,
    schema: FeatureSchema,
    baseline_ctr: Optional[float] = None,
) -> ReplayResult:
    """Replay a stream and evaluate the final ``eval_fraction`` of it.

    Args:
        trials: Encoded trials in stream order
        config: Resolved engine configuration
        schema: Schema the trials were encoded with
        baseline_ctr: Precomputed random-policy CTR for the same stream, k and seed

    Raises:
        EmptyStream: If there are no trials
        ConfigError: If k exceeds the item count
    """
    trials = list(trials)
    _check_inputs(trials, config, schema)

    engine, outcomes = simulate(trials, config, schema)
    if baseline_ctr is None:
        baseline_ctr = random_baseline_ctr(trials, config, schema)
    if baseline_ctr <= 0:
        logger.warning(
            "Random baseline CTR is zero; relative CTR series is all zeros",
            extra={"policy": config.policy.value, "k": config.k},
        )

    evaluated = outcomes[eval_split(len(outcomes), config.eval_fraction) :]
    model = engine.cluster_model
    report = MetricsReport(
        policy=config.policy.value,
        k=config.k,
        seed=config.seed,
        n_trials=len(outcomes),
        n_eval_trials=len(evaluated),
        per_item_ctr={
            schema.item_vocabulary[item]: ctr for item, ctr in per_item_ctr(evaluated).items()
        },
        avg_ctr=compute_avg_ctr(evaluated),
        precision_at_k=compute_precision_at_k(evaluated, config.k),
        relative_ctr_series=relative_ctr_series(outcomes, config.series_window, baseline_ctr),
        random_baseline_ctr=baseline_ctr,
        mean_candidates_scored=float(
            np.mean([outcome.candidates_scored for outcome in evaluated])
        ),
        n_reclusters=engine.n_reclusters,
        final_cluster_count=model.n_clusters if model else 0,
        last_dbscan_eps=model.eps_used if model else None,
        config=config,
    )
    logger.info(
        "Run finished",
        extra={
            "policy": report.policy,
            "k": report.k,
            "seed": report.seed,
            "avg_ctr": report.avg_ctr,
            "precision_at_k": report.precision_at_k,
        },
    )
    return ReplayResult(report=report, engine=engine, outcomes=outcomes)


def run_replay(
    trials: Iterable[EncodedTrial],
    config: EngineConfig,
    schema: FeatureSchema,
    baseline_ctr: Optional[float] = None,
) -> MetricsReport:
    """Replay a stream and return only the metrics report."""
    return replay_stream(trials, config, schema, baseline_ctr).report
