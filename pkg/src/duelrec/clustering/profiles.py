"""Item profiles, reclustering and candidate reduction."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..dataio.encoding import EncodedTrial
from ..schemas.clustering import NOISE, ClusterModel
from ..schemas.config import DbscanParams
from .dbscan import dbscan, default_eps

logger = logging.getLogger(__name__)


@dataclass
class ItemProfile:
    """Running mean of the contexts in which an item was a slate hit."""

    item: int
    mean_context: np.ndarray
    count: int = 1


ItemProfiles = Dict[int, ItemProfile]


def update_item_profiles(
    profiles: ItemProfiles, trial: EncodedTrial, slate_hit: bool
) -> ItemProfiles:
    """Fold one trial into the chosen item's profile (hits only)."""
    if not slate_hit:
        return profiles

    profile = profiles.get(trial.chosen_item)
    if profile is None:
        profiles[trial.chosen_item] = ItemProfile(
            item=trial.chosen_item, mean_context=trial.context.astype(float).copy()
        )
        return profiles

    profile.count += 1
    profile.mean_context = (
        profile.mean_context + (trial.context - profile.mean_context) / profile.count
    )
    return profiles


def recluster(
    profiles: ItemProfiles,
    params: DbscanParams,
    all_items: Optional[Iterable[int]] = None,
) -> ClusterModel:
    """Run DBSCAN over profile means (ascending item order).

    Items from ``all_items`` without a profile are labeled NOISE.
    """
    items = sorted(profiles)
    points = [profiles[item].mean_context for item in items]
    eps = default_eps(points, params)
    labels, n_clusters = dbscan(points, params.model_copy(update={"eps": eps}))

    clusters: List[List[int]] = [[] for _ in range(n_clusters)]
    label_map: Dict[int, int] = {item: NOISE for item in (all_items or ())}
    for item, label in zip(items, labels):
        label_map[item] = label
        if label != NOISE:
            clusters[label].append(item)

    centroids = [
        np.mean([profiles[item].mean_context for item in members], axis=0).tolist()
        for members in clusters
    ]
    model = ClusterModel(
        labels=dict(sorted(label_map.items())),
        clusters=clusters,
        centroids=centroids,
        params=params,
        eps_used=eps,
    )
    logger.info(
        "Reclustered item profiles",
        extra={
            "profiles": len(items),
            "clusters": n_clusters,
            "noise": len(model.noise_items),
            "eps": eps,
            "min_pts": params.min_pts,
        },
    )
    return model


def candidate_items(
    context: np.ndarray,
    model: Optional[ClusterModel],
    all_items: Sequence[int],
    k: int,
) -> List[int]:
    """Members of the cluster with the nearest centroid.

    Falls back to ``all_items`` when there is no model, no cluster, or the
    nearest cluster has fewer than ``k`` members. Ties go to the lower
    cluster id.
    """
    if model is None or model.n_clusters == 0:
        return list(all_items)

    distances = np.sqrt(((model.centroid_matrix - context) ** 2).sum(axis=1))
    members = model.clusters[int(np.argmin(distances))]
    if len(members) < k:
        return list(all_items)
    return list(members)
