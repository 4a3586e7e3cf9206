"""Two-player Hanabi and its tiny variant.

Players see each other's cards but never their own; hints (REVEAL) spend one
of 8 info tokens and narrow the target's per-slot knowledge sets, misplays
burn one of 3 life tokens, and each successful play extends a firework for a
shared +1 so the cumulative reward always equals the firework sum.  DISCARD
restores an info token (capped).  The game ends when the lives run out
(loss), every firework is complete (win), or the deck empties and one final
round is played.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core.env import Environment, register
from ..core.types import GameEvent, GameSpec, StepResult, Trajectory, split_rng

Card = tuple[str, int]  # (color, rank), rank 1-based


@dataclass(frozen=True)
class HanabiConfig:
    colors: tuple[str, ...] = ("R", "Y", "G", "W", "B")
    ranks: int = 5
    rank_counts: tuple[int, ...] = (3, 2, 2, 2, 1)  # copies of rank 1..n per color
    hand_size: int = 5
    info_tokens: int = 8
    life_tokens: int = 3

    @property
    def deck_size(self) -> int:
        return len(self.colors) * sum(self.rank_counts)

    @property
    def max_score(self) -> int:
        return len(self.colors) * self.ranks

    def full_deck(self) -> list[Card]:
        return [
            (color, rank)
            for color in self.colors
            for rank in range(1, self.ranks + 1)
            for _ in range(self.rank_counts[rank - 1])
        ]


FULL_CONFIG = HanabiConfig()
# Tiny variant: two colors, three ranks, hand of three; rank taper mirrors
# the full game's (3, 2, 1), so the deck has 12 cards and the max score is 6.
TINY_CONFIG = HanabiConfig(
    colors=("R", "Y"), ranks=3, rank_counts=(3, 2, 1), hand_size=3
)


def _vocabulary(config: HanabiConfig) -> tuple[str, ...]:
    tokens = [f"PLAY {i}" for i in range(config.hand_size)]
    tokens += [f"DISCARD {i}" for i in range(config.hand_size)]
    tokens += [f"REVEAL COLOR {c}" for c in config.colors]
    tokens += [f"REVEAL RANK {r}" for r in range(1, config.ranks + 1)]
    tokens.append("NOOP")
    return tuple(tokens)


def _spec(name: str, config: HanabiConfig) -> GameSpec:
    vocab = _vocabulary(config)
    return GameSpec(
        name=name,
        num_agents=2,
        interaction_class="cooperative",
        max_steps=None,
        action_vocabulary=(vocab, vocab),
    )


class Slot:
    """Knowledge about one hand slot: the hint-consistent colors and ranks."""

    __slots__ = ("colors", "ranks")

    def __init__(self, config: HanabiConfig):
        self.colors = set(config.colors)
        self.ranks = set(range(1, config.ranks + 1))


class HanabiEnv(Environment):
    config = FULL_CONFIG

    def __init__(self, seed: int):
        super().__init__(_spec(self.env_name(), self.config), seed)
        cfg = self.config
        self.deck = cfg.full_deck()
        split_rng(seed, "deal").shuffle(self.deck)
        self.hands: list[list[Card]] = [[], []]
        self.knowledge: list[list[Slot]] = [[], []]
        for _ in range(cfg.hand_size):
            for player in range(2):
                self._draw(player)
        self.fireworks: dict[str, int] = {c: 0 for c in cfg.colors}
        self.info_tokens = cfg.info_tokens
        self.life_tokens = cfg.life_tokens
        self.discard_pile: list[Card] = []
        self.recent_actions: list[list[str]] = [[], []]
        self.final_countdown: int | None = None
        self.to_move = 0
        self.outcome: str | None = None

    @classmethod
    def env_name(cls) -> str:
        return "hanabi"

    # -- helpers ----------------------------------------------------------

    def _draw(self, player: int) -> None:
        if self.deck:
            self.hands[player].append(self.deck.pop())
            self.knowledge[player].append(Slot(self.config))

    def firework_sum(self) -> int:
        return sum(self.fireworks.values())

    def score(self) -> int:
        """Standard score: zero on life exhaustion, else the firework sum."""
        if self.life_tokens == 0:
            return 0
        return self.firework_sum()

    def current_players(self) -> tuple[int, ...]:
        return (self.to_move,)

    def _legal_actions(self, agent: int) -> list[str]:
        hand = self.hands[agent]
        other = self.hands[1 - agent]
        actions = [f"PLAY {i}" for i in range(len(hand))]
        actions += [f"DISCARD {i}" for i in range(len(hand))]
        if self.info_tokens > 0:
            # empty hints are illegal: the revealed color/rank must match a card
            for color in self.config.colors:
                if any(card[0] == color for card in other):
                    actions.append(f"REVEAL COLOR {color}")
            for rank in range(1, self.config.ranks + 1):
                if any(card[1] == rank for card in other):
                    actions.append(f"REVEAL RANK {rank}")
        return actions

    # -- dynamics -----------------------------------------------------------

    def _apply(self, actions: tuple[str, ...]) -> StepResult:
        mover = self.to_move
        token = actions[mover]
        parts = token.split()
        events: list[GameEvent] = []
        reward = 0.0
        deck_just_emptied = False
        if parts[0] in ("PLAY", "DISCARD"):
            index = int(parts[1])
            card = self.hands[mover].pop(index)
            self.knowledge[mover].pop(index)
            if parts[0] == "PLAY":
                color, rank = card
                if rank == self.fireworks[color] + 1:
                    self.fireworks[color] = rank
                    reward = 1.0
                    events.append(
                        GameEvent(kind="firework-play", actors=(mover,),
                                  detail=f"{color}{rank}")
                    )
                else:
                    self.life_tokens -= 1
                    self.discard_pile.append(card)
                    events.append(
                        GameEvent(kind="misplay", actors=(mover,),
                                  detail=f"{color}{rank}")
                    )
            else:
                self.discard_pile.append(card)
                self.info_tokens = min(self.info_tokens + 1, self.config.info_tokens)
                events.append(
                    GameEvent(kind="discard", actors=(mover,),
                              detail=f"{card[0]}{card[1]}")
                )
            deck_was_nonempty = bool(self.deck)
            self._draw(mover)
            if deck_was_nonempty and not self.deck:
                deck_just_emptied = True
        elif parts[0] == "REVEAL":
            self.info_tokens -= 1
            target = 1 - mover
            if parts[1] == "COLOR":
                color = parts[2]
                for card, slot in zip(self.hands[target], self.knowledge[target]):
                    if card[0] == color:
                        slot.colors.intersection_update({color})
                    else:
                        slot.colors.discard(color)
            else:
                rank = int(parts[2])
                for card, slot in zip(self.hands[target], self.knowledge[target]):
                    if card[1] == rank:
                        slot.ranks.intersection_update({rank})
                    else:
                        slot.ranks.discard(rank)
            events.append(GameEvent(kind="reveal", actors=(mover,), detail=token))
        history = self.recent_actions[mover]
        history.append(token)
        if len(history) > 2:
            history.pop(0)
        # The final-round countdown ticks on every move once the deck is
        # empty; the move that drew the last card does not consume a turn.
        if self.final_countdown is not None:
            self.final_countdown -= 1
        elif deck_just_emptied:
            self.final_countdown = 2
        self.to_move = 1 - mover
        terminal = False
        if self.life_tokens == 0:
            terminal = True
            self.outcome = "lives-exhausted"
        elif all(v == self.config.ranks for v in self.fireworks.values()):
            terminal = True
            self.outcome = "completed"
        elif self.final_countdown == 0:
            terminal = True
            self.outcome = "deck-exhausted"
        return StepResult(rewards=(reward, reward), terminal=terminal,
                          events=tuple(events))

    # -- observation --------------------------------------------------------

    def _slot_text(self, slot: Slot) -> str:
        colors = "".join(c for c in self.config.colors if c in slot.colors)
        ranks = "".join(str(r) for r in range(1, self.config.ranks + 1)
                        if r in slot.ranks)
        return f"colors {colors}, ranks {ranks}"

    def _render_text(self, agent: int) -> str:
        other = 1 - agent
        lines = [f"Hanabi. You are player {agent}."]
        lines.append("-- Basic information --")
        lines.append(
            f"Life tokens: {self.life_tokens}. Info tokens: {self.info_tokens}. "
            f"Deck size: {len(self.deck)}."
        )
        lines.append("-- History --")
        discards = ", ".join(f"{c}{r}" for c, r in self.discard_pile)
        lines.append(f"Discards: {discards if discards else '(none)'}.")
        for p in range(2):
            recent = "; ".join(self.recent_actions[p])
            lines.append(
                f"Player {p} recent actions: {recent if recent else '(none)'}."
            )
        lines.append("-- Fireworks --")
        lines.append(
            ", ".join(f"{c}: {self.fireworks[c]}" for c in self.config.colors) + "."
        )
        lines.append("-- Hands --")
        lines.append(f"Your hand ({len(self.hands[agent])} cards, faces hidden):")
        for i, slot in enumerate(self.knowledge[agent]):
            lines.append(f"  slot {i}: {self._slot_text(slot)}")
        lines.append(f"Player {other} hand:")
        for i, (card, slot) in enumerate(
            zip(self.hands[other], self.knowledge[other])
        ):
            lines.append(
                f"  slot {i}: {card[0]}{card[1]} (knows: {self._slot_text(slot)})"
            )
        lines.append(f"To move: player {self.to_move}.")
        return "\n".join(lines)

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        from ..render.images import render_image

        return (render_image(self, agent),)


class TinyHanabiEnv(HanabiEnv):
    config = TINY_CONFIG

    @classmethod
    def env_name(cls) -> str:
        return "tiny-hanabi"


def hanabi_returns(traj: Trajectory, life_tokens: int = 3) -> tuple[float, float]:
    """(standard, firework) returns of a finished Hanabi trajectory.

    The firework return is the shared cumulative reward; the standard return
    zeroes out when all life tokens were consumed.
    """
    if not traj.terminal:
        raise ValueError("hanabi returns are defined on terminal trajectories only")
    firework = traj.returns[0]
    misplays = len(traj.events("misplay"))
    standard = 0.0 if misplays >= life_tokens else firework
    return standard, firework


register("hanabi", HanabiEnv)
register("tiny-hanabi", TinyHanabiEnv)
