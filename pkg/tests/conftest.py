"""Test configuration and fixtures."""

from pathlib import Path
from typing import Callable

import pytest

from duelrec.dataio import generate_synthetic
from duelrec.schemas import EngineConfig, PolicyId, SyntheticEnvSpec, UpdateSchedule
from duelrec.tasks import LoadedStream, encode_stream


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="run long replay simulations",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def small_spec() -> SyntheticEnvSpec:
    """8-item, 2-segment environment with strong segment signals."""
    return SyntheticEnvSpec(
        n_items=8,
        categorical_vocab_sizes=[3, 2],
        n_continuous=1,
        n_latent_segments=2,
        block_mass=0.95,
        segment_affinity=0.9,
        continuous_noise=0.05,
        n_users=50,
        seed=11,
    )


@pytest.fixture
def small_stream(small_spec: SyntheticEnvSpec) -> LoadedStream:
    """600 encoded trials from the small environment."""
    return encode_stream(generate_synthetic(small_spec, 600))


@pytest.fixture
def engine_config() -> Callable[..., EngineConfig]:
    """Factory for short-cadence engine configs."""

    def make(policy: PolicyId = PolicyId.DB_LR, k: int = 2, **overrides) -> EngineConfig:
        schedule = overrides.pop(
            "schedule",
            UpdateSchedule(
                minibatch_size=64,
                interval_trials=100,
                learning_rate=0.1,
                sgd_batch_size=16,
                warmup_epochs=2,
            ),
        )
        values = dict(
            k=k,
            policy=policy,
            schedule=schedule,
            warmup_trials=100,
            eval_fraction=0.3,
            series_window=100,
            seed=3,
        )
        values.update(overrides)
        return EngineConfig(**values)

    return make


@pytest.fixture
def write_toml(tmp_path: Path) -> Callable[[str, str], Path]:
    """Write TOML text into the test's temp dir."""

    def write(text: str, name: str = "experiment.toml") -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
