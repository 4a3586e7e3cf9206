"""Kuhn poker: three cards, one betting round, two players.

Both players ante 1 chip.  Player 0 acts first; each turn is PASS (no chips)
or BET (one chip).  A pass after a bet folds; two passes or two bets go to
showdown where the higher card wins the pot.  Terminal histories are exactly
PP, BP, BB, PBP, PBB and rewards are net chips (zero-sum).
"""

from __future__ import annotations

from ..core.env import Environment, register
from ..core.types import GameEvent, GameSpec, StepResult, split_rng

PASS = "PASS"
BET = "BET"
CARDS = ("J", "Q", "K")  # ascending rank
RANK = {c: i for i, c in enumerate(CARDS)}

#: history -> (terminal, showdown); histories are strings over {P, B}
TERMINAL_HISTORIES = {
    "PP": True,
    "BP": True,
    "BB": True,
    "PBP": True,
    "PBB": True,
}

SPEC = GameSpec(
    name="kuhn",
    num_agents=2,
    interaction_class="competitive",
    max_steps=None,
    action_vocabulary=((PASS, BET, "NOOP"), (PASS, BET, "NOOP")),
)


def deal_from_seed(seed: int) -> tuple[str, str]:
    rng = split_rng(seed, "deal")
    deck = list(CARDS)
    rng.shuffle(deck)
    return deck[0], deck[1]


def settle(history: str, deal: tuple[str, str]) -> tuple[float, float] | None:
    """Net chips for both players, or None if the history is not terminal."""
    if history not in TERMINAL_HISTORIES:
        return None
    contrib = [1, 1]
    for i, ch in enumerate(history):
        if ch == "B":
            contrib[i % 2] += 1
    if history in ("BP", "PBP"):
        winner = 0 if history == "BP" else 1
    else:  # showdown: PP, BB, PBB
        winner = 0 if RANK[deal[0]] > RANK[deal[1]] else 1
    loser = 1 - winner
    rewards = [0.0, 0.0]
    rewards[winner] = float(contrib[loser])
    rewards[loser] = float(-contrib[loser])
    return rewards[0], rewards[1]


class KuhnEnv(Environment):
    def __init__(self, seed: int):
        super().__init__(SPEC, seed)
        self.deal = deal_from_seed(seed)
        self.history = ""

    def current_players(self) -> tuple[int, ...]:
        return (len(self.history) % 2,)

    def _legal_actions(self, agent: int) -> list[str]:
        return [PASS, BET]

    def _apply(self, actions: tuple[str, ...]) -> StepResult:
        mover = len(self.history) % 2
        token = actions[mover]
        self.history += "P" if token == PASS else "B"
        rewards = settle(self.history, self.deal)
        if rewards is None:
            return StepResult(rewards=(0.0, 0.0), terminal=False)
        winner = 0 if rewards[0] > 0 else 1
        kind = "fold-win" if self.history in ("BP", "PBP") else "showdown-win"
        pot = 2 + self.history.count("B")
        event = GameEvent(kind=kind, actors=(winner,), detail=f"pot={pot}")
        return StepResult(rewards=rewards, terminal=True, events=(event,))

    def pot_size(self) -> int:
        return 2 + self.history.count("B")

    def _render_text(self, agent: int) -> str:
        history = " ".join(
            f"P{i % 2}:{'PASS' if ch == 'P' else 'BET'}"
            for i, ch in enumerate(self.history)
        )
        return (
            f"Kuhn Poker. You are player {agent}.\n"
            f"Your card: {self.deal[agent]}.\n"
            f"Pot: {self.pot_size()} chips.\n"
            f"History: {history if history else '(empty)'}."
        )

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        from ..render.images import render_image

        return (render_image(self, agent),)


register("kuhn", KuhnEnv)
