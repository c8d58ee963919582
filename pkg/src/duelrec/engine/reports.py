"""Report, series and comparison-table files."""

import statistics
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import pandas as pd

from ..schemas.clustering import ClusterModel
from ..schemas.report import MetricsReport


def run_stem(policy: str, k: int, seed: int) -> str:
    return f"{policy}_k{k}_seed{seed}"


def report_path(out_dir: Path, report: MetricsReport) -> Path:
    return Path(out_dir) / f"report_{run_stem(report.policy, report.k, report.seed)}.json"


def series_path(out_dir: Path, report: MetricsReport) -> Path:
    return Path(out_dir) / f"series_{run_stem(report.policy, report.k, report.seed)}.csv"


def cluster_model_path(out_dir: Path, report: MetricsReport) -> Path:
    return Path(out_dir) / f"clusters_{run_stem(report.policy, report.k, report.seed)}.json"


def write_report(report: MetricsReport, out_dir: Path) -> Path:
    """Full report as JSON."""
    path = report_path(out_dir, report)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2) + "\n")
    return path


def write_cluster_model(model: ClusterModel, report: MetricsReport, out_dir: Path) -> Path:
    """Last cluster model of a run as JSON."""
    path = cluster_model_path(out_dir, report)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n")
    return path


def read_cluster_model(path: Path) -> ClusterModel:
    return ClusterModel.model_validate_json(Path(path).read_text())


def write_series(report: MetricsReport, out_dir: Path) -> Path:
    """Relative-CTR series, one row per window."""
    path = series_path(out_dir, report)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        {
            "policy": report.policy,
            "k": report.k,
            "seed": report.seed,
            "window": [point.window for point in report.relative_ctr_series],
            "relative_ctr": [point.value for point in report.relative_ctr_series],
        },
        columns=["policy", "k", "seed", "window", "relative_ctr"],
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def comparison_table(reports: Sequence[MetricsReport]) -> pd.DataFrame:
    """One row per (policy, k): seed medians plus per-seed columns.

    Rows keep the first-seen policy order, then ascending k.
    """
    groups: Dict[Tuple[str, int], List[MetricsReport]] = {}
    for report in reports:
        groups.setdefault((report.policy, report.k), []).append(report)

    policy_order = list(dict.fromkeys(report.policy for report in reports))
    seeds = sorted({report.seed for report in reports})
    rows = []
    for (policy, k), members in sorted(
        groups.items(), key=lambda kv: (policy_order.index(kv[0][0]), kv[0][1])
    ):
        by_seed = {report.seed: report for report in members}
        row = {
            "policy": policy,
            "k": k,
            "avg_ctr": statistics.median(r.avg_ctr for r in members),
            "precision_at_k": statistics.median(r.precision_at_k for r in members),
            "mean_candidates_scored": statistics.median(
                r.mean_candidates_scored for r in members
            ),
        }
        for seed in seeds:
            report = by_seed.get(seed)
            row[f"avg_ctr_seed{seed}"] = report.avg_ctr if report else None
            row[f"precision_at_k_seed{seed}"] = report.precision_at_k if report else None
        rows.append(row)
    return pd.DataFrame(rows)


def write_comparison_table(reports: Sequence[MetricsReport], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    comparison_table(reports).to_csv(path, index=False, lineterminator="\n")
    return path
