"""Experiment jobs."""

from .experiments import (
    LoadedStream,
    encode_stream,
    load_stream,
    run_comparison,
    run_experiment,
)

__all__ = [
    "LoadedStream",
    "encode_stream",
    "load_stream",
    "run_comparison",
    "run_experiment",
]
