"""Two-chef cooperative kitchen on a fixed cramped-room layout.

Chefs move on floor tiles (counters and the other chef block movement) and
INTERACT with the tile they face: pick onions, fill the pot (3 onions), start
a 5-tick cook, plate the finished soup onto a dish, and deliver it at the
serving window.  Rewards are shared: +2 for each onion added, +2 for picking
a dish while the pot is active, +2 for plating, and +10 for delivering a
3-onion soup.  Starting the cook early is allowed but an under-filled soup
earns no delivery reward.  Episodes last exactly 50 steps.

Layout legend: ``X`` counter, ``O`` onion source, ``D`` dish source,
``P`` pot, ``S`` serving window, ``.`` floor, digits = chef spawns.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from ..core.env import Environment, register
from ..core.types import GameEvent, GameSpec, StepResult

UP, DOWN, LEFT, RIGHT, STAY, INTERACT = "UP", "DOWN", "LEFT", "RIGHT", "STAY", "INTERACT"
ACTION_TOKENS = (UP, DOWN, LEFT, RIGHT, STAY, INTERACT)
DELTAS = {UP: (0, -1), DOWN: (0, 1), LEFT: (-1, 0), RIGHT: (1, 0)}

COOK_TIME = 5
SOUP_ONIONS = 3
HORIZON = 50

DEFAULT_LAYOUT = "XXPXX\nO1.2X\nX...S\nXXDXX"

SPEC = GameSpec(
    name="overcooked",
    num_agents=2,
    interaction_class="cooperative",
    max_steps=HORIZON,
    action_vocabulary=(ACTION_TOKENS, ACTION_TOKENS),
    frame_stack=4,
)

Pos = tuple[int, int]


@dataclass(frozen=True)
class Chef:
    pos: Pos
    orientation: str  # UP/DOWN/LEFT/RIGHT
    held: str | None  # None | onion | dish | soup
    soup_onions: int = 0  # onion count of a held soup


@dataclass(frozen=True)
class Pot:
    onions: int = 0
    cooking: bool = False
    timer: int = 0
    cooked: bool = False


@dataclass(frozen=True)
class KitchenSnapshot:
    chefs: tuple[Chef, Chef]
    pot: Pot


class Kitchen:
    """Parsed layout: tile lookup plus the special-tile positions."""

    def __init__(self, layout: str = DEFAULT_LAYOUT):
        self.rows = layout.strip().split("\n")
        self.height = len(self.rows)
        self.width = len(self.rows[0])
        self.spawns: dict[int, Pos] = {}
        self.tiles: dict[Pos, str] = {}
        for y, row in enumerate(self.rows):
            for x, ch in enumerate(row):
                pos = (x, y)
                if ch.isdigit():
                    self.spawns[int(ch) - 1] = pos
                    self.tiles[pos] = "."
                else:
                    self.tiles[pos] = ch
        by_type = {t: p for p, t in self.tiles.items()}
        self.pot_pos = by_type["P"]
        self.onion_source = by_type["O"]
        self.dish_source = by_type["D"]
        self.serving = by_type["S"]

    def is_floor(self, pos: Pos) -> bool:
        return self.tiles.get(pos) == "."

    def tile(self, pos: Pos) -> str:
        return self.tiles.get(pos, "X")


KITCHEN = Kitchen()


class OvercookedEnv(Environment):
    def __init__(self, seed: int):
        super().__init__(SPEC, seed)
        self.kitchen = KITCHEN
        self.chefs: list[Chef] = [
            Chef(pos=self.kitchen.spawns[i], orientation=DOWN, held=None)
            for i in range(2)
        ]
        self.pot = Pot()
        self.history: deque[KitchenSnapshot] = deque(maxlen=SPEC.frame_stack)
        self._push_history()

    def snapshot(self) -> KitchenSnapshot:
        return KitchenSnapshot(chefs=(self.chefs[0], self.chefs[1]), pot=self.pot)

    def _push_history(self) -> None:
        self.history.append(self.snapshot())

    def _legal_actions(self, agent: int) -> list[str]:
        return list(ACTION_TOKENS)

    # -- dynamics -------------------------------------------------------

    def _apply(self, actions: tuple[str, ...]) -> StepResult:
        # Pot ticks first: a cook started this step begins counting next step.
        if self.pot.cooking and not self.pot.cooked:
            timer = self.pot.timer + 1
            self.pot = replace(
                self.pot, timer=timer, cooked=timer >= COOK_TIME,
                cooking=timer < COOK_TIME,
            )
        self._move(actions)
        events = []
        for i in range(2):
            if actions[i] == INTERACT:
                events.extend(self._interact(i))
        rewards = [0.0, 0.0]
        for ev in events:
            shared = {"onion-added": 2.0, "dish-pickup": 2.0, "soup-plated": 2.0,
                      "soup-delivered": 10.0}[ev.kind]
            rewards[0] += shared
            rewards[1] += shared
        self._push_history()
        return StepResult(rewards=tuple(rewards), terminal=False, events=tuple(events))

    def _move(self, actions: tuple[str, ...]) -> None:
        cur = [c.pos for c in self.chefs]
        targets = []
        for i in range(2):
            token = actions[i]
            if token in DELTAS:
                dx, dy = DELTAS[token]
                nxt = (cur[i][0] + dx, cur[i][1] + dy)
                targets.append(nxt if self.kitchen.is_floor(nxt) else cur[i])
                self.chefs[i] = replace(self.chefs[i], orientation=token)
            else:
                targets.append(cur[i])
        if targets[0] == targets[1]:  # same cell: both blocked
            targets = cur
        elif targets[0] == cur[1] and targets[1] == cur[0]:  # swap: both blocked
            targets = cur
        elif targets[0] == cur[1] and targets[1] == cur[1]:  # chef 1 stays
            targets = [cur[0], targets[1]]
        elif targets[1] == cur[0] and targets[0] == cur[0]:  # chef 0 stays
            targets = [targets[0], cur[1]]
        for i in range(2):
            self.chefs[i] = replace(self.chefs[i], pos=targets[i])

    def _facing(self, agent: int) -> Pos:
        chef = self.chefs[agent]
        dx, dy = DELTAS[chef.orientation]
        return (chef.pos[0] + dx, chef.pos[1] + dy)

    def pot_active(self) -> bool:
        return self.pot.onions > 0

    def _interact(self, agent: int) -> list[GameEvent]:
        chef = self.chefs[agent]
        tile = self.kitchen.tile(self._facing(agent))
        events: list[GameEvent] = []
        if tile == "O" and chef.held is None:
            self.chefs[agent] = replace(chef, held="onion")
        elif tile == "D" and chef.held is None:
            self.chefs[agent] = replace(chef, held="dish")
            if self.pot_active():
                events.append(GameEvent(kind="dish-pickup", actors=(agent,)))
        elif tile == "P":
            if (
                chef.held == "onion"
                and not self.pot.cooking
                and not self.pot.cooked
                and self.pot.onions < SOUP_ONIONS
            ):
                self.pot = replace(self.pot, onions=self.pot.onions + 1)
                self.chefs[agent] = replace(chef, held=None)
                events.append(GameEvent(kind="onion-added", actors=(agent,)))
            elif (
                chef.held is None
                and self.pot.onions >= 1
                and not self.pot.cooking
                and not self.pot.cooked
            ):
                self.pot = replace(self.pot, cooking=True, timer=0)
            elif chef.held == "dish" and self.pot.cooked:
                self.chefs[agent] = replace(
                    chef, held="soup", soup_onions=self.pot.onions
                )
                self.pot = Pot()
                events.append(GameEvent(kind="soup-plated", actors=(agent,)))
        elif tile == "S" and chef.held == "soup":
            # under-filled soups are accepted but earn nothing (App-G semantics)
            if chef.soup_onions == SOUP_ONIONS:
                events.append(GameEvent(kind="soup-delivered", actors=(agent,)))
            self.chefs[agent] = replace(chef, held=None, soup_onions=0)
        return events

    # -- observation ------------------------------------------------------

    def _render_text(self, agent: int) -> str:
        lines = [
            f"Overcooked. You are chef {agent}.",
            f"Step: {self.steps_taken}/{self.spec.max_steps}.",
            "Kitchen layout (X counter, O onion source, D dish source, "
            "P pot, S serving window, . floor):",
        ]
        lines.extend(self.kitchen.rows)
        for i, chef in enumerate(self.chefs):
            held = chef.held if chef.held else "nothing"
            if chef.held == "soup":
                held = f"soup({chef.soup_onions} onions)"
            lines.append(
                f"Chef {i}: position {chef.pos}, facing {chef.orientation}, "
                f"holding {held}."
            )
        pot = self.pot
        if pot.cooked:
            pot_desc = f"cooked soup ready ({pot.onions} onions)"
        elif pot.cooking:
            pot_desc = f"cooking, timer {pot.timer}/{COOK_TIME} ({pot.onions} onions)"
        else:
            pot_desc = f"{pot.onions} onions, not cooking"
        lines.append(f"Pot: {pot_desc}.")
        return "\n".join(lines)

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        from ..render.images import render_overcooked_snapshot

        frames = [render_overcooked_snapshot(self.kitchen, snap) for snap in self.history]
        while len(frames) < self.spec.frame_stack:  # pad episode start
            frames.insert(0, frames[0])
        return tuple(frames)


register("overcooked", OvercookedEnv)
