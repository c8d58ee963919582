"""Exact DBSCAN.

Scan order is ascending point index. A border point belongs to the first
cluster whose expansion reaches it; clusters are numbered in discovery order.
"""

import itertools
import logging
import math
from collections import defaultdict, deque
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import pdist

from ..schemas.clustering import NOISE
from ..schemas.config import DbscanParams

logger = logging.getLogger(__name__)

_UNVISITED = -2
_GRID_MAX_DIM = 3


def _distances(points: np.ndarray, center: np.ndarray) -> np.ndarray:
    # Shared by the linear scan and the grid so both see identical values.
    return np.sqrt(((points - center) ** 2).sum(axis=1))


def _as_matrix(points: Sequence[np.ndarray]) -> np.ndarray:
    matrix = np.asarray(points, dtype=float)
    return matrix[:, None] if matrix.ndim == 1 else matrix


def region_query(points: Sequence[np.ndarray], i: int, eps: float) -> List[int]:
    """Indices within Euclidean distance ``eps`` of ``points[i]``, ``i`` included."""
    matrix = _as_matrix(points)
    return np.flatnonzero(_distances(matrix, matrix[i]) <= eps).tolist()


class NeighborIndex:
    """Exact radius queries; a uniform grid of cell size eps when d <= 3."""

    def __init__(self, points: np.ndarray, eps: float) -> None:
        self.points = points
        self.eps = eps
        # Slightly wider than eps so rounding never skips an adjacent cell.
        self._cell_size = eps * (1.0 + 1e-9)
        n, d = points.shape
        self._cells: Dict[Tuple[int, ...], List[int]] = {}
        self._use_grid = 0 < d <= _GRID_MAX_DIM and 0 < eps < math.inf and n > 0
        if self._use_grid:
            cells = defaultdict(list)
            for i, key in enumerate(self._cell_keys(points)):
                cells[key].append(i)
            self._cells = dict(cells)
            self._offsets = list(itertools.product((-1, 0, 1), repeat=d))

    def _cell_keys(self, points: np.ndarray) -> List[Tuple[int, ...]]:
        keys = np.floor(points / self._cell_size).astype(np.int64)
        return [tuple(row) for row in keys.tolist()]

    def query(self, i: int) -> np.ndarray:
        """Sorted neighbor indices of point ``i``."""
        center = self.points[i]
        if not self._use_grid:
            return np.flatnonzero(_distances(self.points, center) <= self.eps)

        key = self._cell_keys(center[None, :])[0]
        candidates = []
        for offset in self._offsets:
            cell = tuple(k + o for k, o in zip(key, offset))
            candidates.extend(self._cells.get(cell, ()))
        candidates = np.sort(np.asarray(candidates, dtype=np.int64))
        mask = _distances(self.points[candidates], center) <= self.eps
        return candidates[mask]


def dbscan(points: Sequence[np.ndarray], params: DbscanParams) -> Tuple[List[int], int]:
    """Cluster points.

    Args:
        points: Vectors of equal dimension (may be empty)
        params: ``eps`` must be resolved (not None)

    Returns:
        Per-point labels (cluster id or NOISE) and the number of clusters
    """
    if len(points) == 0:
        return [], 0
    if params.eps is None:
        raise ValueError("dbscan needs a resolved eps; see default_eps")

    matrix = _as_matrix(points)
    n = matrix.shape[0]
    index = NeighborIndex(matrix, params.eps)
    neighbors = [index.query(i) for i in range(n)]
    is_core = [len(nbrs) >= params.min_pts for nbrs in neighbors]

    labels = [_UNVISITED] * n
    n_clusters = 0
    for i in range(n):
        if labels[i] != _UNVISITED:
            continue
        if not is_core[i]:
            labels[i] = NOISE
            continue

        cluster = n_clusters
        n_clusters += 1
        labels[i] = cluster
        queue = deque(neighbors[i].tolist())
        while queue:
            j = queue.popleft()
            if labels[j] == NOISE:
                labels[j] = cluster
            if labels[j] != _UNVISITED:
                continue
            labels[j] = cluster
            if is_core[j]:
                queue.extend(neighbors[j].tolist())

    return labels, n_clusters


def default_eps(points: Sequence[np.ndarray], params: DbscanParams) -> float:
    """``eps_median_factor`` x median pairwise distance; 1.0 for fewer than two points."""
    if params.eps is not None:
        return params.eps
    if len(points) < 2:
        return 1.0
    median = float(np.median(pdist(np.asarray(points, dtype=float))))
    if median <= 0.0:
        return 1e-9
    return params.eps_median_factor * median
