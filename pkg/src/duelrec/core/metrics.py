"""Prometheus instrumentation for replay runs."""

from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

registry = CollectorRegistry()

TRIALS_TOTAL = Counter(
    "duelrec_trials_total",
    "Trials processed by the engine",
    ["policy"],
    registry=registry,
)
SLATE_HITS_TOTAL = Counter(
    "duelrec_slate_hits_total",
    "Trials whose slate contained the logged item",
    ["policy"],
    registry=registry,
)
MODEL_UPDATES_TOTAL = Counter(
    "duelrec_model_updates_total",
    "Scheduled scorer updates (warm start and partial updates)",
    ["policy", "kind"],
    registry=registry,
)
RECLUSTER_SECONDS = Histogram(
    "duelrec_recluster_seconds",
    "Wall time of one recluster",
    ["policy"],
    registry=registry,
)


def export_textfile(path: Path) -> None:
    """Dump the registry in the node-exporter textfile format."""
    path.parent.mkdir(parents=True, exist_ok=True)
    write_to_textfile(str(path), registry)
