"""Binary scorer checkpoints with a JSON metadata sidecar.

Layout: magic ``DRSC``, a little-endian int64 header
``[format_version, kind_code, context_dim, n_items, n_widths, *widths]``,
then the flat parameter vector as little-endian float64.
"""

import logging
from pathlib import Path
from typing import Tuple

import numpy as np

from ..core.exceptions import LengthMismatch, ModelError
from ..schemas.config import ScorerKind
from ..schemas.model import ScorerMetadata
from .base import Scorer
from .linear import LinearScorer
from .mlp import MLPScorer

logger = logging.getLogger(__name__)

MAGIC = b"DRSC"
FORMAT_VERSION = 1
# Linear scorers with item crosses get their own code.
_KIND_CODES = {ScorerKind.LINEAR: 0, ScorerKind.MLP: 1}
_CROSSED_LINEAR_CODE = 2


def sidecar_path(path: Path) -> Path:
    return Path(path).with_suffix(Path(path).suffix + ".json")


def item_crosses(scorer: Scorer) -> bool:
    return bool(getattr(scorer, "item_crosses", False))


def kind_code(scorer: Scorer) -> int:
    return _CROSSED_LINEAR_CODE if item_crosses(scorer) else _KIND_CODES[scorer.kind]


def scorer_metadata(scorer: Scorer) -> ScorerMetadata:
    return ScorerMetadata(
        kind=scorer.kind,
        item_crosses=item_crosses(scorer),
        context_dim=scorer.context_dim,
        n_items=scorer.n_items,
        layer_widths=scorer.layer_widths,
        n_parameters=scorer.n_parameters,
        format_version=FORMAT_VERSION,
    )


def save_scorer(scorer: Scorer, path: Path) -> Tuple[Path, Path]:
    """Write the binary checkpoint and its sidecar.

    Returns:
        (checkpoint path, sidecar path)
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    widths = scorer.layer_widths
    header = np.array(
        [
            FORMAT_VERSION,
            kind_code(scorer),
            scorer.context_dim,
            scorer.n_items,
            len(widths),
            *widths,
        ],
        dtype="<i8",
    )
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(header.tobytes())
        f.write(scorer.flat_parameters().astype("<f8").tobytes())

    meta_path = sidecar_path(path)
    meta_path.write_text(scorer_metadata(scorer).model_dump_json(indent=2) + "\n")
    logger.info(
        "Saved scorer checkpoint",
        extra={"path": str(path), "kind": scorer.kind.value, "parameters": scorer.n_parameters},
    )
    return path, meta_path


def load_scorer(path: Path) -> Scorer:
    """Rebuild a scorer from a binary checkpoint.

    Raises:
        ModelError: If the file is not a checkpoint or has an unknown version
        LengthMismatch: If the parameter block is truncated
    """
    data = Path(path).read_bytes()
    if not data.startswith(MAGIC):
        raise ModelError("not a scorer checkpoint", params={"path": str(path)})

    offset = len(MAGIC)
    fixed = np.frombuffer(data, dtype="<i8", count=5, offset=offset)
    version, code, context_dim, n_items, n_widths = (int(v) for v in fixed)
    if version != FORMAT_VERSION:
        raise ModelError(
            "unsupported checkpoint version",
            params={"path": str(path), "version": version},
        )
    offset += 5 * 8
    widths = np.frombuffer(data, dtype="<i8", count=n_widths, offset=offset).tolist()
    offset += n_widths * 8

    if code == _KIND_CODES[ScorerKind.MLP]:
        scorer: Scorer = MLPScorer(context_dim, n_items, hidden=widths[1:-1])
    elif code in (_KIND_CODES[ScorerKind.LINEAR], _CROSSED_LINEAR_CODE):
        scorer = LinearScorer(
            context_dim, n_items, item_crosses=code == _CROSSED_LINEAR_CODE
        )
    else:
        raise ModelError(
            "unknown scorer kind in checkpoint",
            params={"path": str(path), "kind_code": code},
        )

    params = np.frombuffer(data, dtype="<f8", offset=offset)
    if params.size != scorer.n_parameters:
        raise LengthMismatch(
            "checkpoint parameter block has the wrong length",
            params={"expected": scorer.n_parameters, "got": int(params.size)},
        )
    scorer.set_flat_parameters(params)
    return scorer
