"""Policy contract and the uniform-random baseline."""

from __future__ import annotations

import random


class Policy:
    """A decision-maker for one seat.

    ``requires`` declares the view ``act`` receives: builtin agents read the
    live environment ("env"); external agents get a rendered Observation
    ("observation").  Every returned token must be in the legal set.
    """

    requires = "env"
    name = "policy"

    def act(self, view, agent: int, legal: list[str], rng: random.Random) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"<{type(self).__name__}>"


class RandomPolicy(Policy):
    """Uniform over the legal set."""

    name = "random"

    def act(self, view, agent, legal, rng):
        if not legal:
            raise ValueError("no legal actions to sample from")
        return legal[rng.randrange(len(legal))]
