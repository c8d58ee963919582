"""Cluster model schema."""

from typing import Dict, List

import numpy as np
from pydantic import BaseModel, Field, PrivateAttr

from .config import DbscanParams

NOISE = -1


class ClusterModel(BaseModel):
    """DBSCAN output over item profiles.

    ``labels`` covers every known item; non-profiled items carry NOISE.
    """

    labels: Dict[int, int] = Field(default_factory=dict)
    clusters: List[List[int]] = Field(default_factory=list)
    centroids: List[List[float]] = Field(default_factory=list)
    params: DbscanParams = Field(default_factory=DbscanParams)
    eps_used: float = 0.0

    _centroid_matrix: np.ndarray = PrivateAttr(default=None)

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    @property
    def centroid_matrix(self) -> np.ndarray:
        """Centroids as an (n_clusters, dim) array."""
        if self._centroid_matrix is None:
            self._centroid_matrix = np.asarray(self.centroids, dtype=float)
        return self._centroid_matrix

    @property
    def noise_items(self) -> List[int]:
        return sorted(item for item, label in self.labels.items() if label == NOISE)
