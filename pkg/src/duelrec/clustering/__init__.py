"""Density clustering of item profiles for candidate reduction."""

from .dbscan import NeighborIndex, dbscan, default_eps, region_query
from .profiles import (
    ItemProfile,
    ItemProfiles,
    candidate_items,
    recluster,
    update_item_profiles,
)

__all__ = [
    "ItemProfile",
    "ItemProfiles",
    "NeighborIndex",
    "candidate_items",
    "dbscan",
    "default_eps",
    "recluster",
    "region_query",
    "update_item_profiles",
]
