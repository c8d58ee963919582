"""Slate-selection policies."""

from .active import ActiveExplorerPolicy, active_explorer_select, uncertainty_weights
from .base import Policy, Provenance, Slate
from .baselines import (
    EpsilonGreedyPolicy,
    ExploreFirstPolicy,
    RandomPolicy,
    StaticLinearPolicy,
    epsilon_greedy_select,
    fee_select,
    random_slate,
    static_select,
)
from .bootstrap import (
    BootstrapMode,
    BootstrapPolicy,
    BootstrapThompsonPolicy,
    bootstrap_select,
    bootstrap_statistics,
)
from .dbgd import (
    ClusteredDbgdMlpPolicy,
    DbgdMlpPolicy,
    DbgdPolicy,
    DbgdState,
    dbgd_feedback,
    dbgd_propose,
    probabilistic_interleave,
)
from .ranking import rank_top_k, top_k_by_score
from .registry import POLICIES, build_policy

__all__ = [
    "POLICIES",
    "ActiveExplorerPolicy",
    "BootstrapMode",
    "BootstrapPolicy",
    "BootstrapThompsonPolicy",
    "ClusteredDbgdMlpPolicy",
    "DbgdMlpPolicy",
    "DbgdPolicy",
    "DbgdState",
    "EpsilonGreedyPolicy",
    "ExploreFirstPolicy",
    "Policy",
    "Provenance",
    "RandomPolicy",
    "Slate",
    "StaticLinearPolicy",
    "active_explorer_select",
    "bootstrap_select",
    "bootstrap_statistics",
    "build_policy",
    "dbgd_feedback",
    "dbgd_propose",
    "epsilon_greedy_select",
    "fee_select",
    "probabilistic_interleave",
    "random_slate",
    "rank_top_k",
    "static_select",
    "top_k_by_score",
    "uncertainty_weights",
]
