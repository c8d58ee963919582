"""Command-line front end: ``run``, ``compare`` and ``synth``.

Exit codes: 0 success, 2 configuration error, 3 data error, 1 anything else
raised by the package.
"""

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

from .core.config import settings
from .core.exceptions import ConfigError, DataError, DuelRecError
from .core.experiment import config_error, load_experiment_config, load_synthetic_spec
from .core.logging import setup_logging
from .core.metrics import export_textfile
from .dataio import generate_synthetic, write_interactions
from .engine import (
    write_cluster_model,
    write_comparison_table,
    write_report,
    write_series,
)
from .engine.reports import run_stem
from .models import save_scorer
from .schemas.config import PolicyId
from .schemas.report import RunManifest
from .tasks import load_stream, run_comparison, run_experiment

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DATA = 3


def fingerprint(path: Path) -> str:
    """sha256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def write_manifest(
    path: Path,
    command: str,
    outputs: Sequence[Path],
    started: float,
    *,
    config_path: Optional[Path] = None,
    resolved_config: Optional[Dict] = None,
    data_path: Optional[Path] = None,
) -> Path:
    manifest = RunManifest(
        command=command,
        config_path=str(config_path) if config_path else None,
        resolved_config=resolved_config or {},
        data_path=str(data_path) if data_path else None,
        data_fingerprint=fingerprint(data_path) if data_path else None,
        output_paths=[str(p) for p in outputs],
        output_fingerprints={str(p): fingerprint(p) for p in outputs},
        duration_seconds=time.perf_counter() - started,
        version=settings.VERSION,
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2) + "\n")
    return path


def cmd_run(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    experiment = load_experiment_config(args.config)
    policy = PolicyId(args.policy) if args.policy else None
    engine_config = experiment.engine_config(policy=policy, k=args.k, seed=args.seed)
    loaded = load_stream(args.data, engine_config.order_seed)

    result = run_experiment(experiment, loaded, policy=policy, k=args.k, seed=args.seed)
    report = result.report
    out_dir = settings.get_run_path(args.out)
    outputs = [write_report(report, out_dir), write_series(report, out_dir)]
    if result.engine.cluster_model is not None:
        outputs.append(write_cluster_model(result.engine.cluster_model, report, out_dir))

    if args.checkpoint:
        scorer = result.engine.policy.scorer
        if scorer is None:
            logger.warning(
                "Policy has no shared scorer; checkpoint skipped",
                extra={"policy": report.policy},
            )
        else:
            outputs.extend(save_scorer(scorer, args.checkpoint))

    stem = run_stem(report.policy, report.k, report.seed)
    manifest = write_manifest(
        out_dir / f"manifest_{stem}.json",
        "run",
        outputs,
        started,
        config_path=args.config,
        resolved_config=report.config.model_dump(mode="json"),
        data_path=args.data,
    )
    logger.info(
        "Run written",
        extra={"outputs": [str(p) for p in outputs], "manifest": str(manifest)},
    )
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    experiment = load_experiment_config(args.config)
    loaded = load_stream(args.data, experiment.engine.order_seed)

    reports = run_comparison(
        experiment,
        loaded,
        policies=[PolicyId(args.policy)] if args.policy else None,
        ks=[args.k] if args.k is not None else None,
        seeds=[args.seed] if args.seed is not None else None,
    )
    out_dir = settings.get_run_path(args.out)
    outputs: List[Path] = [write_comparison_table(reports, out_dir / "compare_table.csv")]
    for report in reports:
        outputs.append(write_report(report, out_dir))
        outputs.append(write_series(report, out_dir))

    write_manifest(
        out_dir / "manifest_compare.json",
        "compare",
        outputs,
        started,
        config_path=args.config,
        resolved_config=experiment.model_dump(mode="json"),
        data_path=args.data,
    )
    logger.info("Comparison written", extra={"cells": len(reports), "out": str(out_dir)})
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    spec = load_synthetic_spec(args.config)
    if args.seed is not None:
        spec = spec.model_copy(update={"seed": args.seed})
    if args.n < 1:
        raise ConfigError("--n must be >= 1", params={"key": "n", "n": args.n})

    out_path = Path(args.out) if args.out else settings.get_run_path() / "synthetic.csv"
    write_interactions(generate_synthetic(spec, args.n), out_path)
    write_manifest(
        out_path.with_name(out_path.stem + ".manifest.json"),
        "synth",
        [out_path],
        started,
        config_path=args.config,
        resolved_config=spec.model_dump(mode="json"),
    )
    logger.info("Synthetic log written", extra={"path": str(out_path), "rows": args.n})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duelrec",
        description="Replay simulator for contextual-bandit slate recommenders",
    )
    parser.add_argument("--log-level", default=None, help="overrides DUELREC_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    policies = [p.value for p in PolicyId]
    for name, handler, help_text in (
        ("run", cmd_run, "replay one policy over a log"),
        ("compare", cmd_compare, "replay the policy x k x seed matrix"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, required=True)
        p.add_argument("--data", type=Path, required=True)
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--policy", choices=policies, default=None)
        if name == "run":
            p.add_argument("--checkpoint", type=Path, default=None)
        p.set_defaults(handler=handler)

    p = sub.add_parser("synth", help="write a synthetic interaction log")
    p.add_argument("--config", type=Path, required=True, help="TOML with a [synthetic] section")
    p.add_argument("--n", type=int, required=True, help="number of trials")
    p.add_argument("--out", type=Path, default=None, help="CSV path")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=cmd_synth)
    return parser


def _report_error(exc: DuelRecError) -> None:
    logger.error(exc.detail, extra={"error_code": exc.error_code, "params": exc.params})
    print(json.dumps(exc.to_dict(), default=str), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    try:
        code = args.handler(args)
    except ValidationError as e:
        _report_error(config_error(e))
        return EXIT_CONFIG
    except ConfigError as e:
        _report_error(e)
        return EXIT_CONFIG
    except DataError as e:
        _report_error(e)
        return EXIT_DATA
    except DuelRecError as e:
        _report_error(e)
        return EXIT_FAILURE

    if settings.PROMETHEUS_TEXTFILE:
        export_textfile(settings.PROMETHEUS_TEXTFILE)
    return code


if __name__ == "__main__":
    sys.exit(main())
