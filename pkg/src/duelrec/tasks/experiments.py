"""Experiment jobs: single replay runs and the policy comparison matrix."""

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed

from ..core.config import settings
from ..dataio import fit_schema, materialize, read_interactions
from ..dataio.encoding import EncodedTrial
from ..engine import ReplayResult, random_baseline_ctr, replay_stream
from ..schemas.config import ExperimentConfig, PolicyId
from ..schemas.dataio import FeatureSchema, RawInteraction
from ..schemas.report import MetricsReport

logger = logging.getLogger(__name__)


@dataclass
class LoadedStream:
    raws: List[RawInteraction]
    schema: FeatureSchema
    trials: List[EncodedTrial]


def load_stream(data_path: Path, order_seed: Optional[int] = None) -> LoadedStream:
    """Read a CSV log, fit its schema and encode it in stream order."""
    raws = read_interactions(data_path)
    return encode_stream(raws, order_seed)


def encode_stream(
    raws: List[RawInteraction], order_seed: Optional[int] = None
) -> LoadedStream:
    schema = fit_schema(raws)
    trials = materialize(raws, schema, order_seed)
    logger.info(
        "Stream encoded",
        extra={
            "trials": len(trials),
            "items": schema.n_items,
            "context_dim": schema.context_dim,
        },
    )
    return LoadedStream(raws=raws, schema=schema, trials=trials)


def run_experiment(
    experiment: ExperimentConfig,
    loaded: LoadedStream,
    *,
    policy: Optional[PolicyId] = None,
    k: Optional[int] = None,
    seed: Optional[int] = None,
) -> ReplayResult:
    """One replay run with optional overrides."""
    config = experiment.engine_config(policy=policy, k=k, seed=seed)
    return replay_stream(loaded.trials, config, loaded.schema)


def run_comparison(
    experiment: ExperimentConfig,
    loaded: LoadedStream,
    *,
    policies: Optional[Sequence[PolicyId]] = None,
    ks: Optional[Sequence[int]] = None,
    seeds: Optional[Sequence[int]] = None,
    n_jobs: Optional[int] = None,
) -> List[MetricsReport]:
    """Every (policy, k, seed) cell on the same encoded stream.

    The random baseline is computed once per (k, seed) and shared by the
    cells. Reports come back in (policy, k, seed) order whatever the worker
    count.
    """
    compare = experiment.compare
    policies = list(policies or compare.policies)
    ks = list(ks or compare.ks)
    seeds = list(seeds or compare.seeds)
    n_jobs = n_jobs or settings.COMPARE_WORKERS

    baseline_keys = list(itertools.product(ks, seeds))
    baseline_values = Parallel(n_jobs=n_jobs, require="sharedmem")(
        delayed(random_baseline_ctr)(
            loaded.trials, experiment.engine_config(k=k, seed=seed), loaded.schema
        )
        for k, seed in baseline_keys
    )
    baselines: Dict[Tuple[int, int], float] = dict(zip(baseline_keys, baseline_values))

    def cell(policy: PolicyId, k: int, seed: int) -> MetricsReport:
        config = experiment.engine_config(policy=policy, k=k, seed=seed)
        report = replay_stream(
            loaded.trials, config, loaded.schema, baselines[(k, seed)]
        ).report
        logger.info(
            "Compare cell finished",
            extra={
                "policy": policy.value,
                "k": k,
                "seed": seed,
                "avg_ctr": report.avg_ctr,
            },
        )
        return report

    cells = list(itertools.product(policies, ks, seeds))
    logger.info(
        "Running comparison",
        extra={"cells": len(cells), "n_jobs": n_jobs},
    )
    return Parallel(n_jobs=n_jobs, require="sharedmem")(
        delayed(cell)(policy, k, seed) for policy, k, seed in cells
    )
