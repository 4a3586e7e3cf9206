"""Normalization references: published constants and in-repo recomputation.

Normalized return places the random baseline at 0 and the oracle at 100:
``100 * (raw - random_ref) / (optimal_ref - random_ref)``.  The published
constants are the raw random/optimal rows the original evaluation reports;
the grid-dilemma and Pong-step scales depend on engine details (horizon,
respawn regime, ALE physics) that an independent implementation cannot
reproduce exactly, so reports carry both the published constants and the
in-repo references from ``compute_reference`` side by side.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..agents import (
    KuhnNEPolicy,
    MCTSPolicy,
    MinimaxPolicy,
    PongBotPolicy,
    PongTrackerPolicy,
    RandomPolicy,
    ScriptedGridPolicy,
    oracle_chef_pair,
)


@dataclass(frozen=True)
class Reference:
    random: float
    optimal: float
    note: str = ""


def normalize(raw: float, random_ref: float, optimal_ref: float) -> float:
    """Affine rescaling: random -> 0, optimal -> 100."""
    if optimal_ref == random_ref:
        raise ValueError(
            f"degenerate references: random={random_ref} optimal={optimal_ref}"
        )
    return 100.0 * (raw - random_ref) / (optimal_ref - random_ref)


#: Published raw reference rows, keyed by metric name.
PUBLISHED: dict[str, Reference] = {
    "hanabi": Reference(0.0, 24.0, "optimal is the reported MAPPO self-play score"),
    "hanabi-firework": Reference(1.2, 24.0),
    "tiny-hanabi": Reference(0.0, 6.0, "max score of the tiny deck"),
    "overcooked": Reference(0.2, 40.0, "optimal: two deliveries per episode"),
    "breakthrough": Reference(-1.0, 1.0),
    "kuhn": Reference(-0.1, 0.0, "optimal is the NE strategy"),
    "tictactoe": Reference(-0.9, 0.0, "optimal play never loses"),
    # The published table lists 1.5 for both the random and optimal Pong
    # score, degenerate under the affine map.  The defaults below keep the
    # published random row (which the in-repo bot reproduces, ~1.2-1.5) and
    # take the first-to-3 win rule for the optimal side; both are config, not
    # rule.
    "pong-score": Reference(1.5, 3.0, "configurable; published optimal degenerate"),
    "pong-step": Reference(147.2, 398.0, "published step scale; ALE physics"),
    "coin": Reference(-0.1, 14.2),
    "hunt": Reference(-10.1, 92.2),
    "battle": Reference(0.2, 29.9),
}


class MissingOracleError(LookupError):
    pass


def oracle_policies(env_name: str) -> list:
    """The per-environment oracle pair/policy used as the 100-point reference."""
    if env_name == "overcooked":
        return list(oracle_chef_pair())
    if env_name == "breakthrough":
        return [MinimaxPolicy(depth=5)]
    if env_name == "kuhn":
        return [KuhnNEPolicy(alpha=0)]
    if env_name == "tictactoe":
        return [MinimaxPolicy(depth=9)]
    if env_name == "pong":
        return [PongTrackerPolicy(aim=6)]
    if env_name == "coin":
        return [ScriptedGridPolicy("own-color-coin"), ScriptedGridPolicy("own-color-coin")]
    if env_name == "hunt":
        return [ScriptedGridPolicy("camp-center"), ScriptedGridPolicy("camp-center")]
    if env_name == "battle":
        return [
            ScriptedGridPolicy("closest-common-block"),
            ScriptedGridPolicy("closest-common-block"),
        ]
    if env_name in ("hanabi", "tiny-hanabi"):
        raise MissingOracleError(
            f"{env_name}: the optimal constant is consumed from the published "
            "reference, not recomputed in-repo"
        )
    raise MissingOracleError(f"no oracle registered for {env_name!r}")


def baseline_policy(env_name: str, kind: str):
    """random | oracle policy factory for compute_reference."""
    if kind == "random":
        return [RandomPolicy()]
    if kind == "oracle":
        return oracle_policies(env_name)
    raise ValueError(f"reference kind must be random|oracle, got {kind!r}")


def opponent_policy(env_name: str):
    """The conventional opponent the competitive protocols evaluate against."""
    if env_name in ("breakthrough", "tictactoe"):
        return MCTSPolicy(exploration=2.0, simulations=100, rollouts=10)
    if env_name == "kuhn":
        return KuhnNEPolicy(alpha=0)
    if env_name == "pong":
        return PongBotPolicy()
    return None
