"""Policy lookup by id."""

from typing import Dict, Optional, Type

import numpy as np

from ..schemas.config import EngineConfig, PolicyId
from .active import ActiveExplorerPolicy
from .base import Policy
from .baselines import (
    EpsilonGreedyPolicy,
    ExploreFirstPolicy,
    RandomPolicy,
    StaticLinearPolicy,
)
from .bootstrap import BootstrapPolicy, BootstrapThompsonPolicy
from .dbgd import ClusteredDbgdMlpPolicy, DbgdMlpPolicy, DbgdPolicy

POLICIES: Dict[PolicyId, Type[Policy]] = {
    cls.policy_id: cls
    for cls in (
        StaticLinearPolicy,
        BootstrapPolicy,
        BootstrapThompsonPolicy,
        EpsilonGreedyPolicy,
        ExploreFirstPolicy,
        ActiveExplorerPolicy,
        DbgdPolicy,
        DbgdMlpPolicy,
        ClusteredDbgdMlpPolicy,
        RandomPolicy,
    )
}


def build_policy(
    config: EngineConfig,
    context_dim: int,
    n_items: int,
    rng: np.random.Generator,
    init_seed: Optional[int] = None,
) -> Policy:
    """Instantiate the policy named by ``config.policy``."""
    return POLICIES[config.policy](config, context_dim, n_items, rng, init_seed)
