"""Per-environment dataset recipes: strategy pairings and balance targets.

Each recipe's composition sums to 400 samples.  The mixed-motive recipes
follow their published six-setting tables; Kuhn pools nine alpha-pair combos
of 600 games each; Breakthrough uses the six minimax depth pairs; Hanabi
balances Play:Discard:Reveal to 2:3:4 with a 50/50 agent order; Overcooked
caps STAY at 10% with chefs balanced 50/50.  The Hanabi, Overcooked, and
Pong sources substitute scripted agents for the original model/human
trajectories; the substitution is stamped into every manifest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Setting:
    """One strategy pairing and its sample quota (None = pooled)."""

    label: str
    seats: tuple[str, str]
    count: int | None = None
    observer: int | None = None  # pin the predicting agent, else alternate


@dataclass(frozen=True)
class DatasetRecipe:
    env: str
    total: int = 400
    settings: tuple[Setting, ...] = ()
    include_reveals: bool = True  # Hanabi predictability knob
    hanabi_type_ratio: tuple[int, int, int] = (2, 3, 4)  # Play:Discard:Reveal
    stay_cap: float = 0.10  # Overcooked STAY ceiling
    kuhn_games_per_combo: int = 600
    depth_pairs: tuple[tuple[int, int], ...] = (
        (3, 4), (3, 5), (4, 5), (4, 6), (4, 4), (5, 5),
    )
    deviations: tuple[str, ...] = ()
    episodes_per_setting: int = 4


_GRID_DEVIATION = ()

_SUBSTITUTION = (
    "source trajectories are scripted-agent play standing in for the "
    "original model/human gameplay logs",
)


def default_recipe(env: str, include_reveals: bool = True) -> DatasetRecipe:
    if env == "coin":
        return DatasetRecipe(
            env=env,
            settings=(
                Setting("common-welfare+common-welfare",
                        ("own-color-coin", "own-color-coin"), 100),
                Setting("self-interest+self-interest",
                        ("closest-coin", "closest-coin"), 100),
                Setting("common-welfare+self-interest",
                        ("own-color-coin", "closest-coin"), 50),
                Setting("self-interest+common-welfare",
                        ("closest-coin", "own-color-coin"), 50),
                Setting("random+self-interest", ("random", "closest-coin"), 50),
                Setting("self-interest+random", ("closest-coin", "random"), 50),
            ),
        )
    if env == "hunt":
        return DatasetRecipe(
            env=env,
            settings=(
                Setting("toward-monster+toward-monster",
                        ("toward-monster", "toward-monster"), 80),
                Setting("camp-center+camp-center",
                        ("camp-center", "camp-center"), 80),
                Setting("camp-corner+camp-corner",
                        ("camp-corner", "camp-corner"), 80),
                Setting("self-interest+self-interest",
                        ("closest-apple", "closest-apple"), 80),
                Setting("random+self-interest", ("random", "closest-apple"), 40),
                Setting("self-interest+random", ("closest-apple", "random"), 40),
            ),
        )
    if env == "battle":
        return DatasetRecipe(
            env=env,
            settings=(
                Setting("common-welfare+common-welfare",
                        ("closest-common-block", "closest-common-block"), 100),
                Setting("self-interest+self-interest",
                        ("own-color-block", "own-color-block"), 100),
                Setting("common-welfare+self-interest",
                        ("closest-common-block", "own-color-block"), 50),
                Setting("self-interest+common-welfare",
                        ("own-color-block", "closest-common-block"), 50),
                Setting("biased-red+biased-red", ("biased-red", "biased-red"), 50),
                Setting("biased-blue+biased-blue", ("biased-blue", "biased-blue"), 50),
            ),
        )
    if env == "kuhn":
        alphas = (Fraction(0), Fraction(1, 6), Fraction(1, 3))
        settings = tuple(
            Setting(f"alpha={a}+alpha={b}", (f"ne:alpha={a}", f"ne:alpha={b}"))
            for a in alphas
            for b in alphas
        )
        return DatasetRecipe(env=env, settings=settings)
    if env == "breakthrough":
        settings = []
        quotas = (67, 67, 67, 67, 66, 66)
        for (d0, d1), quota in zip(
            ((3, 4), (3, 5), (4, 5), (4, 6), (4, 4), (5, 5)), quotas
        ):
            settings.append(
                Setting(
                    f"minimax({d0},{d1})",
                    (f"minimax:depth={d0}", f"minimax:depth={d1}"),
                    quota,
                )
            )
        return DatasetRecipe(env=env, settings=tuple(settings))
    if env == "hanabi":
        return DatasetRecipe(
            env=env,
            settings=(
                Setting("strong+strong", ("hanabi-strong", "hanabi-strong"), 360),
                Setting("weak-predicts-strong", ("hanabi-weak", "hanabi-strong"),
                        40, observer=0),
            ),
            include_reveals=include_reveals,
            deviations=_SUBSTITUTION,
            episodes_per_setting=48,
        )
    if env == "overcooked":
        return DatasetRecipe(
            env=env,
            settings=(
                Setting("oracle-pair", ("chef-oracle", "chef-oracle")),
                Setting("noisy-oracle-0.1", ("noisy-chef:eps=0.1", "noisy-chef:eps=0.1")),
                Setting("noisy-oracle-0.3", ("noisy-chef:eps=0.3", "noisy-chef:eps=0.3")),
            ),
            deviations=_SUBSTITUTION,
            episodes_per_setting=8,
        )
    if env == "pong":
        return DatasetRecipe(
            env=env,
            settings=(
                Setting("bot+tracker", ("bot", "tracker:aim=0"), observer=0),
                Setting("bot+edge-hitter", ("bot", "tracker:aim=6"), observer=0),
                Setting("bot+noisy-tracker", ("bot", "noisy-tracker:eps=0.2"),
                        observer=0),
            ),
            deviations=_SUBSTITUTION
            + ("ground truths are scripted right-paddle actions predicted from "
               "the left (bot) seat",),
            episodes_per_setting=5,
        )
    raise ValueError(f"no dataset recipe for environment {env!r}")
