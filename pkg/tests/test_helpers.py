"""Helper functions for generating test data."""

import random
from typing import Dict, List, Optional, Sequence

import numpy as np
from faker import Faker

from duelrec.dataio.encoding import EncodedTrial
from duelrec.engine import TrialOutcome
from duelrec.policies import Provenance, Slate
from duelrec.schemas import RawInteraction

fake = Faker()


class InteractionGenerator:
    """Generate realistic raw interaction rows."""

    DEVICES = ["android", "ios", "web"]
    APPS = ["maps", "mail", "music", "news", "photos", "weather"]

    @classmethod
    def seed(cls, value: int) -> None:
        Faker.seed(value)
        random.seed(value)

    @classmethod
    def generate_interaction(
        cls,
        timestamp: Optional[int] = None,
        chosen_item: Optional[str] = None,
    ) -> RawInteraction:
        """Generate a single interaction.

        Args:
            timestamp: Epoch milliseconds (random if None)
            chosen_item: Logged item (random app if None)

        Returns:
            RawInteraction with a device, a country and an age
        """
        return RawInteraction(
            user_id=fake.user_name(),
            timestamp=timestamp
            if timestamp is not None
            else int(fake.unix_time() * 1000),
            categorical_values={
                "device": random.choice(cls.DEVICES),
                "country": fake.country_code(),
            },
            continuous_values={"age": float(random.randint(16, 80))},
            chosen_item=chosen_item or random.choice(cls.APPS),
        )

    @classmethod
    def generate_interactions(cls, count: int, start: int = 1_700_000_000_000) -> List[RawInteraction]:
        """Generate ``count`` interactions one second apart."""
        return [cls.generate_interaction(timestamp=start + 1000 * i) for i in range(count)]


def random_trials(
    n: int, context_dim: int, n_items: int, seed: int = 0
) -> List[EncodedTrial]:
    """Encoded trials with uniform contexts and choices."""
    rng = np.random.default_rng(seed)
    return [
        EncodedTrial(
            index=i,
            context=rng.random(context_dim),
            chosen_item=int(rng.integers(n_items)),
        )
        for i in range(n)
    ]


def make_outcome(
    items: Sequence[int], chosen: int, index: int = 0, extra_hits: Sequence[int] = ()
) -> TrialOutcome:
    """Outcome of showing ``items`` when ``chosen`` was logged."""
    slate = Slate.uniform(items, Provenance.EXPLOIT)
    hits = slate.hit_slots(chosen) + [list(items).index(i) for i in extra_hits]
    return TrialOutcome(
        index=index,
        slate=slate,
        chosen_item=chosen,
        hit_slots=sorted(hits),
        candidates_scored=len(items),
    )


def random_outcomes(
    n: int, n_items: int, k: int, seed: int = 0
) -> List[TrialOutcome]:
    rng = np.random.default_rng(seed)
    outcomes = []
    for i in range(n):
        items = rng.choice(n_items, size=k, replace=False).tolist()
        outcomes.append(make_outcome(items, int(rng.integers(n_items)), index=i))
    return outcomes


def recount_ctr(outcomes: Sequence[TrialOutcome]) -> Dict[int, float]:
    """Independent per-item CTR recount with plain loops."""
    shown: Dict[int, int] = {}
    clicked: Dict[int, int] = {}
    for outcome in outcomes:
        for slot, item in enumerate(outcome.slate.items):
            shown[item] = shown.get(item, 0) + 1
            if slot in outcome.hit_slots:
                clicked[item] = clicked.get(item, 0) + 1
    return {item: clicked.get(item, 0) / shown[item] for item in shown}
