"""The 5x5 simultaneous-move social dilemmas.

Coin Dilemma, Monster Hunt and Battle of the Colors share one engine: both
players submit one of five movement tokens each step, off-grid moves resolve
to STAY, and per-game events fire after movement.  Every reward is the sum of
its step's event-table rows, and every event increments a counter that the
observation exposes.

Agent 0 is the red player, agent 1 the blue player.  Coordinates are (x, y)
with (0, 0) the top-left cell; UP decreases y.
"""

from __future__ import annotations

import random

from ..core.env import Environment, register
from ..core.types import GameEvent, GameSpec, StepResult, split_rng

GRID_SIZE = 5
HORIZON = 50

UP, DOWN, LEFT, RIGHT, STAY = "UP", "DOWN", "LEFT", "RIGHT", "STAY"
MOVE_TOKENS = (UP, DOWN, LEFT, RIGHT, STAY)
DELTAS = {UP: (0, -1), DOWN: (0, 1), LEFT: (-1, 0), RIGHT: (1, 0), STAY: (0, 0)}

PLAYER_NAMES = ("red", "blue")

Pos = tuple[int, int]


def resolve_move(pos: Pos, token: str, size: int = GRID_SIZE) -> Pos:
    """Next cell for one token; off-grid moves leave the position unchanged."""
    dx, dy = DELTAS[token]
    nx, ny = pos[0] + dx, pos[1] + dy
    if 0 <= nx < size and 0 <= ny < size:
        return (nx, ny)
    return pos


def manhattan(a: Pos, b: Pos) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _spec(name: str) -> GameSpec:
    return GameSpec(
        name=name,
        num_agents=2,
        interaction_class="mixed",
        max_steps=HORIZON,
        action_vocabulary=(MOVE_TOKENS, MOVE_TOKENS),
    )


class GridEnvBase(Environment):
    """Shared movement, respawn and counter machinery."""

    def __init__(self, spec: GameSpec, seed: int):
        super().__init__(spec, seed)
        self._placement_rng = split_rng(seed, "placement")
        self._respawn_rng = split_rng(seed, "respawn")
        self.players: list[Pos] = []
        self.counters: dict[str, int] = {}
        self._place_initial()

    # -- placement ------------------------------------------------------

    def _all_cells(self) -> list[Pos]:
        return [(x, y) for y in range(GRID_SIZE) for x in range(GRID_SIZE)]

    def _draw_cells(self, rng: random.Random, n: int, occupied: set[Pos]) -> list[Pos]:
        free = [c for c in self._all_cells() if c not in occupied]
        if len(free) < n:
            raise RuntimeError("no free cells left on the grid")
        out = []
        for _ in range(n):
            cell = free.pop(rng.randrange(len(free)))
            out.append(cell)
        return out

    def _place_initial(self) -> None:
        rng = self._placement_rng
        self.players = self._draw_cells(rng, 2, set())
        occupied = set(self.players)
        self._place_entities(rng, occupied)

    def _place_entities(self, rng: random.Random, occupied: set[Pos]) -> None:
        raise NotImplementedError

    def respawn_cell(self, extra_occupied: set[Pos] = frozenset()) -> Pos:
        """Uniform free cell: never on a player or another entity."""
        occupied = set(self.players) | self._entity_cells() | set(extra_occupied)
        return self._draw_cells(self._respawn_rng, 1, occupied)[0]

    def _entity_cells(self) -> set[Pos]:
        raise NotImplementedError

    # -- stepping ---------------------------------------------------------

    def _legal_actions(self, agent: int) -> list[str]:
        return list(MOVE_TOKENS)

    def _apply(self, actions: tuple[str, ...]) -> StepResult:
        old = list(self.players)
        self.players = [
            resolve_move(self.players[i], actions[i]) for i in range(2)
        ]
        events = self._resolve(old)
        rewards = [0.0, 0.0]
        for ev in events:
            for i, r in enumerate(self.event_rewards(ev)):
                rewards[i] += r
            self.counters[self.counter_key(ev)] = (
                self.counters.get(self.counter_key(ev), 0) + 1
            )
        return StepResult(rewards=tuple(rewards), terminal=False, events=tuple(events))

    def _resolve(self, old_positions: list[Pos]) -> list[GameEvent]:
        raise NotImplementedError

    def event_rewards(self, event: GameEvent) -> tuple[float, float]:
        raise NotImplementedError

    def counter_key(self, event: GameEvent) -> str:
        if event.actors and len(event.actors) == 1:
            return f"{event.kind}:{PLAYER_NAMES[event.actors[0]]}"
        return event.kind

    def counter_rows(self) -> list[tuple[str, str, int]]:
        """(label, reward description, count) rows for observations."""
        raise NotImplementedError

    # -- observation ------------------------------------------------------

    def _text_header(self, agent: int, title: str) -> str:
        return (
            f"{title} (5x5 grid). You are the {PLAYER_NAMES[agent]} player.\n"
            f"Step: {self.steps_taken}/{self.spec.max_steps}.\n"
            f"Red player: {self.players[0]}. Blue player: {self.players[1]}."
        )

    def _text_counters(self) -> str:
        lines = ["Event counters:"]
        for label, reward_desc, count in self.counter_rows():
            lines.append(f"  {label} ({reward_desc}): {count}")
        return "\n".join(lines)

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        from ..render.images import render_image

        return (render_image(self, agent),)


class CoinDilemmaEnv(GridEnvBase):
    """One red and one blue coin are always on the board.

    Collecting any coin pays the collector +1; collecting the other player's
    color also costs that player 2.  Collected coins respawn.
    """

    def __init__(self, seed: int):
        super().__init__(_spec("coin"), seed)

    def _place_entities(self, rng: random.Random, occupied: set[Pos]) -> None:
        cells = self._draw_cells(rng, 2, occupied)
        self.coins: dict[str, Pos] = {"red": cells[0], "blue": cells[1]}

    def _entity_cells(self) -> set[Pos]:
        return set(self.coins.values())

    def _resolve(self, old_positions: list[Pos]) -> list[GameEvent]:
        events = []
        collected: list[str] = []
        for i, pos in enumerate(self.players):
            for color, cpos in self.coins.items():
                if pos == cpos:
                    own = color == PLAYER_NAMES[i]
                    events.append(
                        GameEvent(
                            kind="own-coin" if own else "cross-coin",
                            actors=(i,),
                            detail=color,
                        )
                    )
                    if color not in collected:
                        collected.append(color)
        for color in collected:
            self.coins[color] = self.respawn_cell()
        return events

    def event_rewards(self, event: GameEvent) -> tuple[float, float]:
        actor = event.actors[0]
        if event.kind == "own-coin":
            return (1.0, 0.0) if actor == 0 else (0.0, 1.0)
        if event.kind == "cross-coin":
            return (1.0, -2.0) if actor == 0 else (-2.0, 1.0)
        raise ValueError(f"unknown event {event.kind}")

    def counter_rows(self) -> list[tuple[str, str, int]]:
        g = self.counters.get
        return [
            ("red collects red coin", "red +1", g("own-coin:red", 0)),
            ("red collects blue coin", "red +1, blue -2", g("cross-coin:red", 0)),
            ("blue collects blue coin", "blue +1", g("own-coin:blue", 0)),
            ("blue collects red coin", "blue +1, red -2", g("cross-coin:blue", 0)),
        ]

    def _render_text(self, agent: int) -> str:
        return "\n".join(
            [
                self._text_header(agent, "Coin Dilemma"),
                f"Red coin: {self.coins['red']}. Blue coin: {self.coins['blue']}.",
                self._text_counters(),
            ]
        )


class MonsterHuntEnv(GridEnvBase):
    """Two apples and a monster that chases the nearest player.

    Eating an apple pays +2.  Meeting the monster alone costs 2 and respawns
    the player; meeting it together pays both +5 and respawns the monster.
    The monster steps after the players, before event resolution.
    """

    def __init__(self, seed: int):
        super().__init__(_spec("hunt"), seed)

    def _place_entities(self, rng: random.Random, occupied: set[Pos]) -> None:
        cells = self._draw_cells(rng, 3, occupied)
        self.apples: list[Pos] = [cells[0], cells[1]]
        self.monster: Pos = cells[2]

    def _entity_cells(self) -> set[Pos]:
        return set(self.apples) | {self.monster}

    def monster_step(self) -> Pos:
        """One move reducing Manhattan distance to the nearest player.

        Equidistant players break toward red (agent 0); the horizontal axis
        moves first.
        """
        d0 = manhattan(self.monster, self.players[0])
        d1 = manhattan(self.monster, self.players[1])
        target = self.players[0] if d0 <= d1 else self.players[1]
        mx, my = self.monster
        if target[0] != mx:
            return (mx + (1 if target[0] > mx else -1), my)
        if target[1] != my:
            return (mx, my + (1 if target[1] > my else -1))
        return (mx, my)

    def _resolve(self, old_positions: list[Pos]) -> list[GameEvent]:
        m_old = self.monster
        self.monster = self.monster_step()
        events = []
        encountered = []
        for i in range(2):
            met = self.players[i] == self.monster or (
                # swap in one tick counts as an encounter (no tunneling)
                self.players[i] == m_old
                and self.monster == old_positions[i]
            )
            encountered.append(met)
        if all(encountered):
            events.append(GameEvent(kind="monster-joint", actors=(0, 1)))
            self.monster = self.respawn_cell()
        elif any(encountered):
            loner = 0 if encountered[0] else 1
            events.append(GameEvent(kind="monster-alone", actors=(loner,)))
            self.players[loner] = self.respawn_cell()
        eaten: list[int] = []
        for i in range(2):
            if encountered[i]:
                continue
            for j, apple in enumerate(self.apples):
                if self.players[i] == apple:
                    events.append(GameEvent(kind="apple", actors=(i,)))
                    if j not in eaten:
                        eaten.append(j)
        for j in eaten:
            self.apples[j] = self.respawn_cell()
        return events

    def event_rewards(self, event: GameEvent) -> tuple[float, float]:
        if event.kind == "apple":
            return (2.0, 0.0) if event.actors[0] == 0 else (0.0, 2.0)
        if event.kind == "monster-alone":
            return (-2.0, 0.0) if event.actors[0] == 0 else (0.0, -2.0)
        if event.kind == "monster-joint":
            return (5.0, 5.0)
        raise ValueError(f"unknown event {event.kind}")

    def counter_rows(self) -> list[tuple[str, str, int]]:
        g = self.counters.get
        return [
            ("red eats an apple", "red +2", g("apple:red", 0)),
            ("blue eats an apple", "blue +2", g("apple:blue", 0)),
            ("red meets the monster alone", "red -2", g("monster-alone:red", 0)),
            ("blue meets the monster alone", "blue -2", g("monster-alone:blue", 0)),
            ("both defeat the monster", "both +5", g("monster-joint", 0)),
        ]

    def _render_text(self, agent: int) -> str:
        return "\n".join(
            [
                self._text_header(agent, "Monster Hunt"),
                f"Apples: {self.apples[0]} and {self.apples[1]}. "
                f"Monster: {self.monster}.",
                self._text_counters(),
            ]
        )


class BattleEnv(GridEnvBase):
    """Battle of the Colors: one red and one blue block.

    Both players on the red block pays (red +2, blue +1); both on blue pays
    (red +1, blue +2); one player on each block pays nothing.  Visited blocks
    refresh to new random cells.
    """

    def __init__(self, seed: int):
        super().__init__(_spec("battle"), seed)

    def _place_entities(self, rng: random.Random, occupied: set[Pos]) -> None:
        cells = self._draw_cells(rng, 2, occupied)
        self.blocks: dict[str, Pos] = {"red": cells[0], "blue": cells[1]}

    def _entity_cells(self) -> set[Pos]:
        return set(self.blocks.values())

    def _resolve(self, old_positions: list[Pos]) -> list[GameEvent]:
        on_red = [i for i in range(2) if self.players[i] == self.blocks["red"]]
        on_blue = [i for i in range(2) if self.players[i] == self.blocks["blue"]]
        events = []
        if len(on_red) == 2:
            events.append(GameEvent(kind="red-block-meet", actors=(0, 1)))
            self.blocks["red"] = self.respawn_cell()
        elif len(on_blue) == 2:
            events.append(GameEvent(kind="blue-block-meet", actors=(0, 1)))
            self.blocks["blue"] = self.respawn_cell()
        elif len(on_red) == 1 and len(on_blue) == 1:
            events.append(GameEvent(kind="block-mismatch", actors=(0, 1)))
            self.blocks["red"] = self.respawn_cell()
            self.blocks["blue"] = self.respawn_cell()
        return events

    def event_rewards(self, event: GameEvent) -> tuple[float, float]:
        if event.kind == "red-block-meet":
            return (2.0, 1.0)
        if event.kind == "blue-block-meet":
            return (1.0, 2.0)
        if event.kind == "block-mismatch":
            return (0.0, 0.0)
        raise ValueError(f"unknown event {event.kind}")

    def counter_rows(self) -> list[tuple[str, str, int]]:
        g = self.counters.get
        return [
            ("both players on the red block", "red +2, blue +1", g("red-block-meet", 0)),
            ("both players on the blue block", "red +1, blue +2", g("blue-block-meet", 0)),
            ("players on different blocks", "both +0", g("block-mismatch", 0)),
        ]

    def _render_text(self, agent: int) -> str:
        return "\n".join(
            [
                self._text_header(agent, "Battle of the Colors"),
                f"Red block: {self.blocks['red']}. Blue block: {self.blocks['blue']}.",
                self._text_counters(),
            ]
        )


register("coin", CoinDilemmaEnv)
register("hunt", MonsterHuntEnv)
register("battle", BattleEnv)
