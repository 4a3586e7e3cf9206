"""Baseline agents and the agent-spec parser used by the CLI.

Spec strings name a policy plus optional ``key=value`` parameters, e.g.
``random``, ``minimax:depth=5``, ``mcts:c=2.0,sims=100,rollouts=10``,
``ne:alpha=1/6``, ``own-color-coin``, ``tracker:aim=6``, ``bot``,
``hanabi-heuristic:risk=0.3``, ``remote:<url>``.
"""

from __future__ import annotations

from fractions import Fraction

from .base import Policy, RandomPolicy
from .kuhn_ne import KuhnNEPolicy, best_response_gain, ne_profile, seat0_value
from .remote import RemoteHTTPPolicy, RemoteStdioPolicy
from .scripted import (
    GRID_KINDS,
    HanabiHeuristicPolicy,
    NoisyPolicy,
    PongBotPolicy,
    PongTrackerPolicy,
    ScriptedGridPolicy,
    ScriptedPolicy,
    oracle_chef_pair,
    premature_cook_pair,
)
from .search import MCTSPolicy, MinimaxPolicy, mcts_best_move, minimax_best_move

__all__ = [
    "GRID_KINDS",
    "HanabiHeuristicPolicy",
    "KuhnNEPolicy",
    "MCTSPolicy",
    "MinimaxPolicy",
    "NoisyPolicy",
    "Policy",
    "PongBotPolicy",
    "PongTrackerPolicy",
    "RandomPolicy",
    "RemoteHTTPPolicy",
    "RemoteStdioPolicy",
    "ScriptedGridPolicy",
    "ScriptedPolicy",
    "best_response_gain",
    "mcts_best_move",
    "minimax_best_move",
    "ne_profile",
    "oracle_chef_pair",
    "parse_agent_spec",
    "premature_cook_pair",
    "seat0_value",
]


def _parse_params(text: str) -> dict[str, str]:
    params: dict[str, str] = {}
    if not text:
        return params
    for part in text.split(","):
        if "=" not in part:
            raise ValueError(f"malformed agent parameter {part!r} (expected key=value)")
        key, value = part.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def parse_agent_spec(spec: str, mode: str = "multimodal") -> Policy:
    """Build a policy from its CLI spec string."""
    head, _, rest = spec.partition(":")
    head = head.strip()
    if head == "random":
        return RandomPolicy()
    if head == "minimax":
        params = _parse_params(rest)
        return MinimaxPolicy(depth=int(params.get("depth", 5)))
    if head == "mcts":
        params = _parse_params(rest)
        return MCTSPolicy(
            exploration=float(params.get("c", 2.0)),
            simulations=int(params.get("sims", 100)),
            rollouts=int(params.get("rollouts", 10)),
        )
    if head == "ne":
        params = _parse_params(rest)
        return KuhnNEPolicy(alpha=Fraction(params.get("alpha", "0")))
    if head in GRID_KINDS:
        return ScriptedGridPolicy(head)
    if head == "bot":
        return PongBotPolicy()
    if head == "tracker":
        params = _parse_params(rest)
        return PongTrackerPolicy(aim=float(params.get("aim", 0.0)))
    if head == "hanabi-heuristic":
        params = _parse_params(rest)
        return HanabiHeuristicPolicy(recklessness=float(params.get("risk", 0.0)))
    if head == "remote":
        return RemoteHTTPPolicy(endpoint=rest or None, mode=mode)
    raise ValueError(
        f"unknown agent spec {spec!r}; known: random, minimax, mcts, ne, bot, "
        f"tracker, hanabi-heuristic, remote, {', '.join(GRID_KINDS)}"
    )
