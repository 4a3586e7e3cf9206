"""Scripted baseline policies: grid heuristics, Pong paddles, kitchen scripts,
and a rule-based Hanabi player.

The grid heuristics are the strategy kinds used for dataset generation and
the mixed-motive oracle references: each takes a greedy Manhattan step toward
its target (horizontal axis first) and camping kinds hold STAY once arrived.
"""

from __future__ import annotations

from ..games.grid import PLAYER_NAMES, STAY, manhattan
from ..games import overcooked as oc
from ..games import pong as pg
from .base import Policy

GRID_KINDS = (
    "own-color-coin",
    "closest-coin",
    "toward-monster",
    "camp-center",
    "camp-corner",
    "closest-apple",
    "closest-common-block",
    "own-color-block",
    "biased-red",
    "biased-blue",
)


def greedy_step(src, dst) -> str:
    """One token moving src toward dst; horizontal first; STAY on arrival."""
    if src == dst:
        return STAY
    if dst[0] != src[0]:
        return "RIGHT" if dst[0] > src[0] else "LEFT"
    return "DOWN" if dst[1] > src[1] else "UP"


def greedy_step_avoiding(src, dst, forbidden) -> str:
    """Greedy step that never lands on ``forbidden``.

    Preference order: distance-reducing steps (horizontal first), then a
    sidestep around the blocked cell.  The sidestep momentarily adds one to
    the distance but unblocks the straight-line case.
    """
    from ..games.grid import resolve_move

    if src == dst:
        return STAY
    reducing = []
    if dst[0] != src[0]:
        reducing.append("RIGHT" if dst[0] > src[0] else "LEFT")
    if dst[1] != src[1]:
        reducing.append("DOWN" if dst[1] > src[1] else "UP")
    for token in reducing:
        if resolve_move(src, token) != forbidden:
            return token
    for token in ("UP", "DOWN", "LEFT", "RIGHT"):
        cell = resolve_move(src, token)
        if cell not in (forbidden, src):
            return token
    return STAY


class ScriptedGridPolicy(Policy):
    def __init__(self, kind: str):
        if kind not in GRID_KINDS:
            raise ValueError(f"unknown scripted kind {kind!r}; known: {GRID_KINDS}")
        self.kind = kind
        self.name = kind

    def target(self, env, agent: int):
        kind = self.kind
        me = env.players[agent]
        if kind == "own-color-coin":
            return env.coins[PLAYER_NAMES[agent]]
        if kind == "closest-coin":
            return min(
                (env.coins[c] for c in ("red", "blue")),
                key=lambda pos: manhattan(me, pos),
            )
        if kind == "toward-monster":
            return env.monster
        if kind == "camp-center":
            return (2, 2)
        if kind == "camp-corner":
            return (0, 0)
        if kind == "closest-apple":
            return min(env.apples, key=lambda pos: manhattan(me, pos))
        if kind == "closest-common-block":
            return min(
                (env.blocks[c] for c in ("red", "blue")),
                key=lambda pos: manhattan(env.players[0], pos)
                + manhattan(env.players[1], pos),
            )
        if kind == "own-color-block":
            return env.blocks[PLAYER_NAMES[agent]]
        if kind == "biased-red":
            return env.blocks["red"]
        return env.blocks["blue"]  # biased-blue

    def act(self, env, agent, legal, rng):
        me = env.players[agent]
        if self.kind == "own-color-coin":
            # "only collects its own color": route around the other coin so
            # no cross-color pickup ever happens incidentally
            other_coin = env.coins[PLAYER_NAMES[1 - agent]]
            return greedy_step_avoiding(me, self.target(env, agent), other_coin)
        return greedy_step(me, self.target(env, agent))


class ScriptedPolicy(Policy):
    """Plays a fixed action list indexed by the environment step counter."""

    name = "scripted"

    def __init__(self, script, pad: str = STAY):
        self.script = list(script)
        self.pad = pad

    def act(self, env, agent, legal, rng):
        t = env.steps_taken
        token = self.script[t] if t < len(self.script) else self.pad
        return token if token in legal else self.pad


class NoisyPolicy(Policy):
    """Wraps a policy; with probability epsilon plays a random legal action."""

    def __init__(self, inner: Policy, epsilon: float):
        self.inner = inner
        self.epsilon = epsilon
        self.requires = inner.requires
        self.name = f"noisy({inner.name},{epsilon})"

    def act(self, view, agent, legal, rng):
        if rng.random() < self.epsilon:
            return legal[rng.randrange(len(legal))]
        return self.inner.act(view, agent, legal, rng)


# -- pong ----------------------------------------------------------------------


class PongBotPolicy(Policy):
    """The built-in left-paddle bot.

    Tracks the ball's y only while the ball approaches through the left half
    of the court, recenters otherwise, and moves on alternate ticks so its
    effective speed is the configured bot speed (half the paddle speed).
    """

    name = "bot"

    def act(self, env, agent, legal, rng):
        cfg = env.config
        if env.steps_taken % 2 == 1:
            return pg.STAY
        ball_x, ball_y = env.ball
        approaching = env.velocity[0] < 0 and ball_x < cfg.court_width / 2
        target = ball_y if approaching else cfg.court_height / 2
        diff = target - env.paddles[agent]
        if abs(diff) <= cfg.paddle_speed:
            return pg.STAY
        return pg.DOWN if diff > 0 else pg.UP


class PongTrackerPolicy(Policy):
    """Keeps the paddle on the ball's y, optionally aiming off-center.

    ``aim`` shifts the paddle so the ball strikes ``aim`` units from the
    paddle center, bending the return; aim 0 is the pure blocking tracker.
    """

    name = "tracker"

    def __init__(self, aim: float = 0.0):
        self.aim = aim

    def act(self, env, agent, legal, rng):
        ball_y = env.ball[1]
        target = ball_y - self.aim
        diff = target - env.paddles[agent]
        if abs(diff) <= 2:
            return pg.STAY
        return pg.DOWN if diff > 0 else pg.UP


# -- overcooked -------------------------------------------------------------------

# Open-loop two-soup plan for the default kitchen (verified by test): chef 0
# shuttles onions between the source and the pot and starts both cooks;
# chef 1 fetches dishes, plates, and delivers.  Two deliveries by step 44.
L, R, U, D, S, I = "LEFT", "RIGHT", "UP", "DOWN", "STAY", "INTERACT"

ORACLE_CHEF0 = [
    L, I, R, U, I,          # onion 1
    L, I, R, U, I,          # onion 2
    L, I, R, U, I,          # onion 3
    I,                      # start cook 1
    L, I,                   # fetch onion 4 early
    S, S, S,                # wait for plating
    R, U, I,                # onion 4
    L, I, R, U, I,          # onion 5
    L, I, R, U, I,          # onion 6
    I,                      # start cook 2
    L,                      # vacate the pot tile
]

ORACLE_CHEF1 = [
    S, S, S, S, S,
    D, L, D, I,             # fetch dish 1 (pot already active)
    S, S, S, S, S, S, S, S,
    U, S, S, I,             # plate soup 1 when the timer hits 5
    D, R, R, I,             # deliver soup 1
    L, D, I,                # fetch dish 2
    S, S, S, S, S, S, S, S,
    U, S, S, I,             # plate soup 2
    D, R, R, I,             # deliver soup 2
]


def oracle_chef_pair() -> tuple[ScriptedPolicy, ScriptedPolicy]:
    return ScriptedPolicy(ORACLE_CHEF0), ScriptedPolicy(ORACLE_CHEF1)


def premature_cook_pair() -> tuple[ScriptedPolicy, ScriptedPolicy]:
    """Two-onion trace: cook starts early, so delivery earns nothing."""
    chef0 = [
        L, I, R, U, I,      # onion 1
        L, I, R, U, I,      # onion 2
        I,                  # premature cook start with 2 onions
        L,
    ]
    chef1 = [
        S, S, S, S, S,
        D, L, D, I,         # fetch dish
        S, S, S, S,
        U, S, S, I,         # plate the under-filled soup
        D, R, R, I,         # bring it to the window: accepted, no reward
    ]
    return ScriptedPolicy(chef0), ScriptedPolicy(chef1)


# -- hanabi -----------------------------------------------------------------------


class HanabiHeuristicPolicy(Policy):
    """Rule-based Hanabi: play certain cards, hint playable ones, discard.

    ``recklessness`` > 0 sometimes plays a merely-probable card, producing
    the misplays and lower-skill trajectories dataset generation wants.
    """

    name = "hanabi-heuristic"

    def __init__(self, recklessness: float = 0.0):
        self.recklessness = recklessness

    def act(self, env, agent, legal, rng):
        cfg = env.config
        fireworks = env.fireworks
        knowledge = env.knowledge[agent]

        def playable_fraction(slot) -> float:
            combos = [(c, r) for c in slot.colors for r in slot.ranks]
            good = sum(1 for c, r in combos if fireworks[c] + 1 == r)
            return good / len(combos)

        for i, slot in enumerate(knowledge):
            if playable_fraction(slot) == 1.0:
                return f"PLAY {i}"
        if self.recklessness > 0 and rng.random() < self.recklessness:
            fractions = [(playable_fraction(s), i) for i, s in enumerate(knowledge)]
            best, idx = max(fractions)
            if best >= 0.2:
                return f"PLAY {idx}"
        if env.info_tokens > 0:
            other = 1 - agent
            for i, card in enumerate(env.hands[other]):
                color, rank = card
                if fireworks[color] + 1 != rank:
                    continue
                slot = env.knowledge[other][i]
                if len(slot.ranks) > 1 and f"REVEAL RANK {rank}" in legal:
                    return f"REVEAL RANK {rank}"
                if len(slot.colors) > 1 and f"REVEAL COLOR {color}" in legal:
                    return f"REVEAL COLOR {color}"
        for i, slot in enumerate(knowledge):
            useless = all(
                r <= fireworks[c] for c in slot.colors for r in slot.ranks
            )
            if useless:
                return f"DISCARD {i}"
        if env.info_tokens < cfg.info_tokens:
            return "DISCARD 0"
        reveals = [a for a in legal if a.startswith("REVEAL")]
        if reveals:
            return reveals[0]
        return "DISCARD 0"
