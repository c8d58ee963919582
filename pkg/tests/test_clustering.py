"""Tests for DBSCAN, item profiles and candidate reduction."""

import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import cdist
from sklearn.cluster import DBSCAN

from duelrec.clustering import (
    NeighborIndex,
    candidate_items,
    dbscan,
    default_eps,
    recluster,
    region_query,
    update_item_profiles,
)
from duelrec.dataio.encoding import EncodedTrial
from duelrec.engine import read_cluster_model
from duelrec.schemas import NOISE, DbscanParams


def brute_force_dbscan(points: np.ndarray, eps: float, min_pts: int):
    """Core points, the core-core components and the noise set."""
    distances = cdist(points, points)
    adjacency = distances <= eps
    core = adjacency.sum(axis=1) >= min_pts
    core_idx = np.flatnonzero(core)
    if core_idx.size == 0:
        return core, [], set(range(len(points)))
    graph = csr_matrix(adjacency[np.ix_(core_idx, core_idx)])
    _, component = connected_components(graph, directed=False)
    core_partition = {}
    for idx, comp in zip(core_idx, component):
        core_partition.setdefault(comp, set()).add(int(idx))
    reachable = adjacency[:, core].any(axis=1)
    noise = {int(i) for i in np.flatnonzero(~reachable)}
    return core, list(core_partition.values()), noise


def two_blobs(seed: int = 0):
    rng = np.random.default_rng(seed)
    a = rng.normal([0.0, 0.0], 0.1, size=(100, 2))
    b = rng.normal([5.0, 0.0], 0.1, size=(100, 2))
    outliers = rng.uniform([-10, -10], [15, 10], size=(10, 2))
    return np.vstack([a, b, outliers])


class TestRegionQuery:
    """Test radius queries."""

    def test_line(self):
        """Points 0, 1, 3 with eps 1 around 0."""
        assert region_query([np.array([0.0]), np.array([1.0]), np.array([3.0])], 0, 1.0) == [0, 1]

    def test_zero_radius(self):
        """eps=0 keeps only exact duplicates."""
        points = np.array([[1.0, 1.0], [1.0, 1.0], [1.0, 1.5]])
        assert region_query(points, 0, 0.0) == [0, 1]

    def test_grid_matches_brute_force(self):
        """The grid index returns the brute-force neighborhoods."""
        rng = np.random.default_rng(2)
        points = rng.random((50, 2))
        index = NeighborIndex(points, 0.2)
        distances = cdist(points, points)
        for i in range(50):
            expected = np.flatnonzero(distances[i] <= 0.2).tolist()
            assert index.query(i).tolist() == expected
            assert region_query(points, i, 0.2) == expected


class TestDbscan:
    """Test the clustering itself."""

    def test_one_dimensional_example(self):
        """Three dense runs of a line, one isolated point."""
        points = [np.array([v]) for v in (0, 1, 2, 10, 11, 12, 50)]
        labels, n = dbscan(points, DbscanParams(eps=1.5, min_pts=2))
        assert n == 2
        assert labels == [0, 0, 0, 1, 1, 1, NOISE]

    def test_empty(self):
        """No points, no clusters."""
        assert dbscan([], DbscanParams(eps=1.0)) == ([], 0)

    def test_everything_one_cluster(self):
        """min_pts=1 with a huge eps joins all points."""
        points = np.random.default_rng(0).random((30, 4))
        labels, n = dbscan(points, DbscanParams(eps=1e6, min_pts=1))
        assert n == 1 and set(labels) == {0}

    def test_two_blobs_match_sklearn(self):
        """Two tight blobs plus outliers give two clusters, like sklearn."""
        points = two_blobs()
        labels, n = dbscan(points, DbscanParams(eps=0.5, min_pts=4))
        reference = DBSCAN(eps=0.5, min_samples=4).fit(points).labels_
        assert n == 2
        assert np.mean(np.array(labels[:200]) != NOISE) >= 0.95
        assert {i for i, l in enumerate(labels) if l == NOISE} == set(
            np.flatnonzero(reference == -1).tolist()
        )

    @pytest.mark.timeout(10)
    def test_random_instances_match_oracle(self):
        """Core partitions and noise agree with the connected-components oracle."""
        rng = np.random.default_rng(42)
        for _ in range(200):
            n = int(rng.integers(1, 200))
            d = int(rng.integers(1, 6))
            eps = float(rng.uniform(0.05, 0.6))
            min_pts = int(rng.integers(1, 8))
            points = rng.random((n, d))
            labels, n_clusters = dbscan(points, DbscanParams(eps=eps, min_pts=min_pts))
            core, partition, noise = brute_force_dbscan(points, eps, min_pts)

            assert {i for i, l in enumerate(labels) if l == NOISE} == noise
            assert n_clusters == len(partition)
            found = {}
            for i in np.flatnonzero(core):
                found.setdefault(labels[i], set()).add(int(i))
            assert sorted(map(sorted, found.values())) == sorted(map(sorted, partition))

    def test_permutation_invariance(self):
        """Well separated blobs cluster the same in any input order."""
        points = two_blobs(1)[:200]
        labels, _ = dbscan(points, DbscanParams(eps=0.5, min_pts=4))
        order = np.random.default_rng(5).permutation(200)
        shuffled, _ = dbscan(points[order], DbscanParams(eps=0.5, min_pts=4))
        restored = np.empty(200, dtype=int)
        restored[order] = shuffled
        original_groups = {frozenset(np.flatnonzero(np.array(labels) == c)) for c in set(labels)}
        shuffled_groups = {frozenset(np.flatnonzero(restored == c)) for c in set(restored)}
        assert original_groups == shuffled_groups

    def test_default_eps(self):
        """Half the median pairwise distance, with small-input fallbacks."""
        points = [np.array([0.0]), np.array([1.0]), np.array([3.0])]
        assert default_eps(points, DbscanParams()) == pytest.approx(1.0)
        assert default_eps(points[:1], DbscanParams()) == 1.0
        assert default_eps(points, DbscanParams(eps=0.3)) == 0.3


class TestProfiles:
    """Test item profiles and reclustering."""

    def test_running_mean(self):
        """Incremental means equal the batch mean."""
        rng = np.random.default_rng(0)
        contexts = rng.random((1000, 5))
        profiles = {}
        for i, context in enumerate(contexts):
            update_item_profiles(profiles, EncodedTrial(i, context, 3), slate_hit=True)
        assert profiles[3].count == 1000
        np.testing.assert_allclose(profiles[3].mean_context, contexts.mean(axis=0), atol=1e-9)

    def test_misses_are_ignored(self):
        """Trials without a slate hit leave profiles unchanged."""
        profiles = {}
        update_item_profiles(profiles, EncodedTrial(0, np.ones(2), 1), slate_hit=False)
        assert profiles == {}

    def test_two_point_mean(self):
        """Two hits average their contexts."""
        profiles = {}
        update_item_profiles(profiles, EncodedTrial(0, np.array([0.0, 2.0]), 1), True)
        update_item_profiles(profiles, EncodedTrial(1, np.array([1.0, 0.0]), 1), True)
        np.testing.assert_allclose(profiles[1].mean_context, [0.5, 1.0])

    def test_recluster_empty(self):
        """No profiles give an empty model and candidates fall back."""
        model = recluster({}, DbscanParams(), all_items=range(4))
        assert model.n_clusters == 0
        assert model.noise_items == [0, 1, 2, 3]
        assert candidate_items(np.zeros(3), model, [0, 1, 2, 3], 2) == [0, 1, 2, 3]

    def test_single_profile(self):
        """One profile with min_pts=1 is a singleton cluster."""
        profiles = {}
        update_item_profiles(profiles, EncodedTrial(0, np.array([0.2, 0.4]), 5), True)
        model = recluster(profiles, DbscanParams(min_pts=1))
        assert model.clusters == [[5]]
        np.testing.assert_allclose(model.centroids[0], [0.2, 0.4])

    def test_two_blob_profiles(self):
        """Profiles on two blobs form two clusters with mean centroids."""
        blobs = two_blobs(3)
        points = np.vstack([blobs[:10], blobs[100:110]])
        profiles = {}
        for item, point in enumerate(points):
            update_item_profiles(profiles, EncodedTrial(item, point, item), True)
        model = recluster(profiles, DbscanParams(eps=0.5, min_pts=2), all_items=range(25))
        assert model.n_clusters == 2
        assert sorted(sorted(c) for c in model.clusters) == [list(range(10)), list(range(10, 20))]
        for cluster, centroid in zip(model.clusters, model.centroids):
            np.testing.assert_allclose(
                centroid, points[cluster].mean(axis=0), atol=1e-9
            )
        assert set(model.labels) == set(range(25))
        assert {20, 21, 22, 23, 24} <= set(model.noise_items)


class TestCandidateItems:
    """Test nearest-centroid candidate reduction."""

    @pytest.fixture
    def model(self):
        points = two_blobs(4)[:200]
        profiles = {}
        for item, point in enumerate(points):
            update_item_profiles(profiles, EncodedTrial(item, point, item), True)
        return recluster(profiles, DbscanParams(eps=0.5, min_pts=4))

    def test_no_model_falls_back(self):
        assert candidate_items(np.zeros(2), None, [0, 1, 2], 1) == [0, 1, 2]

    def test_centroid_context(self, model):
        """A context at a centroid returns that cluster."""
        for cluster, centroid in zip(model.clusters, model.centroids):
            assert candidate_items(np.array(centroid), model, list(range(200)), 3) == cluster

    def test_small_cluster_falls_back(self, model):
        """Clusters smaller than k fall back to every item."""
        everything = list(range(200))
        assert candidate_items(np.zeros(2), model, everything, 500) == everything

    def test_matches_nearest_centroid(self, model):
        """Random contexts map to the brute-force nearest cluster."""
        rng = np.random.default_rng(9)
        centroids = np.array(model.centroids)
        for context in rng.uniform([-2, -2], [7, 2], size=(10_000, 2)):
            nearest = int(np.argmin(((centroids - context) ** 2).sum(axis=1)))
            assert candidate_items(context, model, list(range(200)), 3) == model.clusters[nearest]

    def test_json_round_trip(self, model, tmp_path):
        """A model read back from JSON routes contexts the same way."""
        path = tmp_path / "clusters.json"
        path.write_text(model.model_dump_json(indent=2))
        loaded = read_cluster_model(path)
        assert loaded.model_dump() == model.model_dump()
        assert all(isinstance(item, int) for item in loaded.labels)
        for context in np.random.default_rng(2).uniform([-2, -2], [7, 2], size=(200, 2)):
            assert candidate_items(context, loaded, list(range(200)), 3) == candidate_items(
                context, model, list(range(200)), 3
            )
