"""Tests for ranking, DBGD, interleaving and the baseline policies."""

import itertools

import numpy as np
import pytest
from scipy.special import logit

from duelrec.core.exceptions import InsufficientItems, PolicyError
from duelrec.models import LinearScorer, PerArmScorers, ReplayEntry
from duelrec.policies import (
    POLICIES,
    BootstrapMode,
    DbgdState,
    Provenance,
    Slate,
    StaticLinearPolicy,
    active_explorer_select,
    bootstrap_statistics,
    build_policy,
    dbgd_feedback,
    dbgd_propose,
    epsilon_greedy_select,
    fee_select,
    probabilistic_interleave,
    rank_top_k,
    top_k_by_score,
    uncertainty_weights,
)
from duelrec.schemas import PolicyConfig, PolicyId


def item_scorer(item_weights):
    """Linear scorer over a 1-d zero context whose scores order like ``item_weights``."""
    scorer = LinearScorer(1, len(item_weights), seed=0)
    scorer.set_flat_parameters(np.array([0.0, *item_weights, 0.0]))
    return scorer


def fixed_arms(probabilities, n_members=1):
    """Per-arm scorers returning the given probability for a zero context."""
    arms = PerArmScorers(len(probabilities), 1, n_members=n_members, seed=0)
    for arm, p in zip(arms.members, probabilities):
        for member in arm:
            member.set_flat_parameters(np.array([0.0, logit(p)]))
    arms._refresh()
    return arms


ZERO = np.zeros(1)


class TestRanking:
    """Test top-k ranking."""

    def test_top_two(self):
        """Scores .1 .5 .5 .9 rank item 3 then the lower-index tie."""
        scorer = item_scorer([0.1, 0.5, 0.5, 0.9])
        assert rank_top_k(scorer, ZERO, [0, 1, 2, 3], 2) == [3, 1]

    def test_padding_from_all_items(self):
        """One candidate for k=2 pads with the best remaining item."""
        scorer = item_scorer([0.1, 0.5, 0.5, 0.9])
        assert rank_top_k(scorer, ZERO, [0], 2, all_items=range(4)) == [0, 3]

    def test_insufficient(self):
        scorer = item_scorer([0.1, 0.2])
        with pytest.raises(InsufficientItems):
            rank_top_k(scorer, ZERO, [], 1)
        with pytest.raises(InsufficientItems):
            rank_top_k(scorer, ZERO, [0], 2)

    @pytest.mark.parametrize("crossed", [False, True])
    def test_probability_and_logit_orders_agree(self, crossed):
        """Ranking by probability equals ranking by raw logit."""
        rng = np.random.default_rng(4)
        scorer = LinearScorer(3, 12, seed=4, item_crosses=crossed)
        if crossed:
            scorer.crosses[:] = rng.normal(size=scorer.crosses.shape)
        candidates = list(range(12))
        for _ in range(200):
            context = rng.random(3)
            k = int(rng.integers(1, 13))
            logits = scorer.logits(scorer.build_inputs(context, candidates))
            assert rank_top_k(scorer, context, candidates, k) == top_k_by_score(
                candidates, logits, k
            )

    def test_matches_sorting_oracle(self):
        """Random scores with forced ties agree with sorting by (-score, item)."""
        rng = np.random.default_rng(0)
        for _ in range(500):
            n = int(rng.integers(1, 30))
            items = rng.choice(100, size=n, replace=False).tolist()
            scores = rng.integers(0, 5, size=n) / 4.0
            k = int(rng.integers(1, n + 1))
            expected = [i for _, i in sorted(zip(-scores, items))][:k]
            assert top_k_by_score(items, scores, k) == expected


class TestSlate:
    """Test slate validation."""

    def test_duplicates_rejected(self):
        with pytest.raises(PolicyError):
            Slate.uniform([1, 1], Provenance.EXPLOIT)

    def test_provenance_length(self):
        with pytest.raises(PolicyError):
            Slate(items=[1, 2], provenance=[Provenance.EXPLORE])

    def test_hit_slots(self):
        slate = Slate.uniform([4, 7, 9], Provenance.EXPLOIT)
        assert slate.hit_slots(7) == [1]
        assert slate.hit_slots(3) == []


class TestDbgdPropose:
    """Test perturbation proposals."""

    @pytest.fixture
    def state(self):
        return DbgdState(LinearScorer(3, 1, seed=1), delta=0.5, beta=0.1, rng=np.random.default_rng(2))

    def test_unit_direction(self, state):
        """Explore parameters are P + delta*u with |u| = 1."""
        base = state.exploit_scorer.flat_parameters()
        explore, u = dbgd_propose(state)
        assert np.linalg.norm(u) == pytest.approx(1.0)
        np.testing.assert_allclose(explore.flat_parameters(), base + 0.5 * u)
        np.testing.assert_array_equal(state.exploit_scorer.flat_parameters(), base)

    def test_directions_centered(self, state):
        """Directions average to zero."""
        mean = np.mean([dbgd_propose(state)[1] for _ in range(2000)], axis=0)
        np.testing.assert_allclose(mean, 0.0, atol=0.05)

    @pytest.mark.parametrize("delta", [0.0, -1.0, float("inf")])
    def test_invalid_delta(self, delta):
        with pytest.raises(ValueError):
            DbgdState(LinearScorer(1, 1, seed=0), delta=delta, beta=0.1, rng=np.random.default_rng())


class TestInterleave:
    """Test probabilistic interleaving."""

    def test_identical_lists(self):
        """Identical rankings interleave to the same ranking."""
        rng = np.random.default_rng(0)
        for _ in range(50):
            assert probabilistic_interleave([3, 1, 2], [3, 1, 2], 3, rng).items == [3, 1, 2]

    def test_fair_coin(self):
        """The first slot comes from each list half the time."""
        rng = np.random.default_rng(1)
        exploit = sum(
            probabilistic_interleave([0, 1], [2, 3], 2, rng).provenance[0] is Provenance.EXPLOIT
            for _ in range(10_000)
        )
        assert exploit / 10_000 == pytest.approx(0.5, abs=0.015)

    def test_provenance_matches_source(self):
        """Disjoint lists: every slot's item belongs to its source list."""
        rng = np.random.default_rng(2)
        list_m, list_m_prime = [0, 1, 2, 3], [4, 5, 6, 7]
        for _ in range(200):
            slate = probabilistic_interleave(list_m, list_m_prime, 4, rng)
            for item, source in zip(slate.items, slate.provenance):
                assert item in (list_m if source is Provenance.EXPLOIT else list_m_prime)
            assert len(set(slate.items)) == 4

    def test_source_order_preserved(self):
        """Items from one source appear in that source's rank order."""
        rng = np.random.default_rng(3)
        for _ in range(200):
            slate = probabilistic_interleave([0, 1, 2], [5, 4, 3], 3, rng)
            from_m = [i for i, s in zip(slate.items, slate.provenance) if s is Provenance.EXPLOIT]
            from_prime = [i for i, s in zip(slate.items, slate.provenance) if s is Provenance.EXPLORE]
            assert from_m == [0, 1, 2][: len(from_m)]
            assert from_prime == [5, 4, 3][: len(from_prime)]

    def test_insufficient(self):
        with pytest.raises(InsufficientItems):
            probabilistic_interleave([0, 1], [1, 0], 3, np.random.default_rng())


class TestDbgdFeedback:
    """Test parameter moves on feedback."""

    def setup_method(self):
        self.state = DbgdState(
            LinearScorer(2, 2, seed=0), delta=1.0, beta=0.05, rng=np.random.default_rng(0)
        )
        self.u = np.zeros(self.state.exploit_scorer.n_parameters)
        self.u[0] = 1.0
        self.slate = Slate(items=[0, 1], provenance=[Provenance.EXPLOIT, Provenance.EXPLORE])

    def test_no_hit(self):
        before = self.state.exploit_scorer.flat_parameters()
        dbgd_feedback(self.state, self.slate, None, self.u)
        np.testing.assert_array_equal(self.state.exploit_scorer.flat_parameters(), before)

    def test_exploit_hit(self):
        before = self.state.exploit_scorer.flat_parameters()
        dbgd_feedback(self.state, self.slate, 0, self.u)
        np.testing.assert_array_equal(self.state.exploit_scorer.flat_parameters(), before)

    def test_explore_hit(self):
        """A hit on an explore slot moves P by beta*delta*u."""
        before = self.state.exploit_scorer.flat_parameters()
        dbgd_feedback(self.state, self.slate, 1, self.u)
        np.testing.assert_allclose(
            self.state.exploit_scorer.flat_parameters(), before + 0.05 * self.u
        )

    def test_every_provenance_pattern(self):
        """Parameters move exactly when the hit slot is an explore slot."""
        rng = np.random.default_rng(1)
        for pattern in itertools.product(list(Provenance), repeat=3):
            for hit in (None, 0, 1, 2):
                slate = Slate(items=[0, 1, 2], provenance=list(pattern))
                u = rng.standard_normal(self.state.exploit_scorer.n_parameters)
                u /= np.linalg.norm(u)
                before = self.state.exploit_scorer.flat_parameters()
                dbgd_feedback(self.state, slate, hit, u)
                moved = self.state.exploit_scorer.flat_parameters() - before
                if hit is not None and pattern[hit] is Provenance.EXPLORE:
                    np.testing.assert_allclose(moved, 0.05 * u, atol=1e-12)
                else:
                    np.testing.assert_array_equal(moved, 0.0)


class TestShallowBaselines:
    """Test epsilon-greedy and explore-first selection."""

    def test_epsilon_frequency(self):
        """Epsilon 0.2 explores a fifth of the time."""
        scorer = item_scorer([0.1, 0.2, 0.3, 0.4, 0.5])
        rng = np.random.default_rng(0)
        explored = sum(
            epsilon_greedy_select(scorer, ZERO, range(5), 2, 0.2, rng).provenance[0]
            is Provenance.EXPLORE
            for _ in range(10_000)
        )
        assert explored / 10_000 == pytest.approx(0.2, abs=0.02)

    def test_epsilon_extremes(self):
        scorer = item_scorer([0.1, 0.2, 0.3])
        rng = np.random.default_rng(0)
        for _ in range(100):
            assert epsilon_greedy_select(scorer, ZERO, range(3), 1, 0.0, rng).items == [2]
            assert (
                epsilon_greedy_select(scorer, ZERO, range(3), 1, 1.0, rng).provenance[0]
                is Provenance.EXPLORE
            )

    def test_fee_boundary(self):
        """Uniform before the horizon, greedy from it."""
        scorer = item_scorer([0.1, 0.2, 0.3])
        rng = np.random.default_rng(0)
        assert fee_select(4, 5, scorer, ZERO, range(3), 1, rng).provenance == [Provenance.EXPLORE]
        assert fee_select(5, 5, scorer, ZERO, range(3), 1, rng).items == [2]


class TestBootstrap:
    """Test bootstrapped UCB and TS statistics."""

    def test_ucb_percentile(self):
        """Members 0.1..1.0 at percentile 80 give 0.8."""
        scores = np.linspace(0.1, 1.0, 10)[None, :]
        stat = bootstrap_statistics(scores, BootstrapMode.UCB, 80.0, np.random.default_rng())
        assert stat[0] == pytest.approx(0.8)

    def test_identical_members(self):
        """Identical members give that value under both modes."""
        scores = np.full((3, 5), 0.3)
        rng = np.random.default_rng(0)
        for mode in BootstrapMode:
            np.testing.assert_allclose(bootstrap_statistics(scores, mode, 80.0, rng), 0.3)

    def test_thompson_picks_members_uniformly(self):
        scores = np.arange(4, dtype=float)[None, :]
        rng = np.random.default_rng(1)
        picks = [bootstrap_statistics(scores, BootstrapMode.TS, 80.0, rng)[0] for _ in range(8000)]
        counts = np.bincount(np.array(picks, dtype=int), minlength=4)
        np.testing.assert_allclose(counts / 8000, 0.25, atol=0.02)


class TestActiveExplorer:
    """Test uncertainty-weighted selection."""

    def test_weights(self):
        np.testing.assert_allclose(uncertainty_weights(np.array([0.5, 0.99])), [0.25, 0.0099])
        assert uncertainty_weights(np.array([1.0 - 1e-12]))[0] == 0.0

    def test_certain_arms_are_greedy(self):
        """Zero uncertainty everywhere falls back to the greedy slate."""
        arms = fixed_arms([1e-12, 1.0 - 1e-12, 1e-12])
        slate = active_explorer_select(arms, ZERO, [0, 1, 2], 2, np.random.default_rng(0), 1.0)
        assert slate.items == [1, 0]
        assert slate.provenance == [Provenance.EXPLOIT, Provenance.EXPLOIT]

    def test_uncertain_arm_preferred(self):
        """p=0.5 vs p=0.99: the uncertain arm is sampled with probability ~0.962."""
        arms = fixed_arms([0.5, 0.99])
        rng = np.random.default_rng(2)
        picked = sum(
            active_explorer_select(arms, ZERO, [0, 1], 1, rng, 1.0).items[0] == 0
            for _ in range(10_000)
        )
        assert picked / 10_000 == pytest.approx(0.25 / 0.2599, abs=0.01)

    def test_greedy_share(self):
        """explore_share 0 always exploits."""
        arms = fixed_arms([0.5, 0.99])
        rng = np.random.default_rng(3)
        for _ in range(100):
            assert active_explorer_select(arms, ZERO, [0, 1], 1, rng, 0.0).items == [1]


class TestPolicies:
    """Test policy objects built from configs."""

    @pytest.mark.parametrize("policy_id", list(PolicyId))
    def test_every_policy_selects_valid_slates(self, engine_config, policy_id):
        config = engine_config(
            policy=policy_id,
            k=3,
            policy_config=PolicyConfig(bootstrap_members=3, fee_explore_trials=5),
        )
        policy = build_policy(config, 4, 6, np.random.default_rng(0), init_seed=1)
        assert isinstance(policy, POLICIES[policy_id])
        rng = np.random.default_rng(1)
        for t in range(20):
            slate = policy.select(t, rng.random(4), list(range(6)), 3)
            assert slate.k == 3 and len(set(slate.items)) == 3
            assert set(slate.items) <= set(range(6))
            policy.feedback(slate, int(rng.integers(3)))

    def test_static_policy_is_deterministic(self, engine_config):
        """Same seed and data, same slates; learning afterwards is ignored."""
        config = engine_config(policy=PolicyId.LR)
        rng = np.random.default_rng(0)
        entries = [
            ReplayEntry(rng.random(3), int(rng.integers(4)), int(rng.integers(2)))
            for _ in range(200)
        ]
        slates = []
        for _ in range(2):
            policy = build_policy(config, 3, 4, np.random.default_rng(5), init_seed=5)
            assert isinstance(policy, StaticLinearPolicy)
            policy.fit_static(entries, np.random.default_rng(9))
            frozen = policy.scorer.flat_parameters()
            policy.learn(entries, np.random.default_rng(1))
            np.testing.assert_array_equal(policy.scorer.flat_parameters(), frozen)
            slates.append([policy.select(i, e.context, range(4), 2).items for i, e in enumerate(entries[:30])])
        assert slates[0] == slates[1]

    def test_dbgd_moves_on_explore_hits(self, engine_config):
        """A DBGD policy counts a move only for explore-slot hits."""
        policy = build_policy(engine_config(policy=PolicyId.DB_LR), 2, 4, np.random.default_rng(0), 1)
        slate = policy.select(0, np.ones(2), list(range(4)), 2)
        explore_slots = [i for i, p in enumerate(slate.provenance) if p is Provenance.EXPLORE]
        before = policy.scorer.flat_parameters()
        policy.feedback(slate, explore_slots[0] if explore_slots else None)
        assert policy.moves == (1 if explore_slots else 0)
        assert (not np.array_equal(before, policy.scorer.flat_parameters())) == bool(explore_slots)

    @pytest.mark.parametrize("policy_id", [PolicyId.EGREEDY, PolicyId.FEE])
    def test_linear_policies_follow_context(self, engine_config, policy_id):
        """Item 0 pays at the first context, item 1 at the second; both are equally popular."""
        config = engine_config(
            policy=policy_id, policy_config=PolicyConfig(epsilon=0.0, fee_explore_trials=0)
        )
        policy = build_policy(config, 2, 2, np.random.default_rng(0), init_seed=0)
        contexts = np.eye(2)
        entries = [
            ReplayEntry(contexts[c], item, int(item == c)) for c in range(2) for item in range(2)
        ] * 100
        policy.learn(entries, np.random.default_rng(1), epochs=20)
        for c in range(2):
            assert policy.select(1, contexts[c], [0, 1], 1).items == [c]
