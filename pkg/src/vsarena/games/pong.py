"""Self-contained two-paddle Pong, the arcade stand-in.

Agent 0 drives the left paddle (the built-in bot's seat in evaluation),
agent 1 the right paddle.  Each tick both sides submit UP/DOWN/STAY; with
probability ``sticky_prob`` a side's previous action repeats instead.  The
ball advances 2 units horizontally per tick, reflects off the top/bottom
walls, and takes a vertical speed in {-3, -1, 0, 1, 3} from the hit offset
when a paddle returns it (five bands across the paddle).  A ball past a
paddle scores for the opponent (+1/-1) and re-serves toward the conceder;
first to 3 points wins.  Episodes open with a seeded random number (1..30)
of forced STAY ticks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..core.env import Environment, register
from ..core.types import GameEvent, GameSpec, StepResult, split_rng

UP, DOWN, STAY = "UP", "DOWN", "STAY"
ACTION_TOKENS = (UP, DOWN, STAY)

SIDE_NAMES = ("left", "right")


@dataclass(frozen=True)
class PongConfig:
    court_width: int = 160
    court_height: int = 192
    paddle_length: int = 16
    paddle_speed: int = 4
    ball_speed_x: int = 2
    ball_half: int = 2
    paddle_inset: int = 8  # x of each paddle plane from its wall
    sticky_prob: float = 0.25
    noop_min: int = 1
    noop_max: int = 30
    frame_stack: int = 4
    win_score: int = 3
    bot_speed: int = 2
    max_steps: int = 3000  # safety cap; the game itself ends at 3 points

    def __post_init__(self) -> None:
        if not 0.0 <= self.sticky_prob <= 1.0:
            raise ValueError("sticky_prob must be in [0, 1]")
        if self.frame_stack < 1:
            raise ValueError("frame_stack must be >= 1")


DEFAULT_CONFIG = PongConfig()


def _spec(config: PongConfig) -> GameSpec:
    return GameSpec(
        name="pong",
        num_agents=2,
        interaction_class="competitive",
        max_steps=config.max_steps,
        action_vocabulary=(ACTION_TOKENS, ACTION_TOKENS),
        frame_stack=config.frame_stack,
    )


@dataclass(frozen=True)
class PongSnapshot:
    paddles: tuple[float, float]  # paddle center y, (left, right)
    ball: tuple[float, float]
    velocity: tuple[float, float]
    scores: tuple[int, int]


def bounce_band(offset: float, paddle_half: float) -> int:
    """Vertical speed from the hit offset: five bands across the paddle."""
    f = max(-1.0, min(1.0, offset / paddle_half))
    if abs(f) < 0.2:
        return 0
    if abs(f) < 0.6:
        return 1 if f > 0 else -1
    return 3 if f > 0 else -3


class PongEnv(Environment):
    def __init__(self, seed: int, config: PongConfig = DEFAULT_CONFIG):
        super().__init__(_spec(config), seed)
        self.config = config
        self._sticky_rng = split_rng(seed, "sticky")
        self._serve_rng = split_rng(seed, "serve")
        mid = config.court_height / 2
        self.paddles = [mid, mid]
        self.scores = [0, 0]
        self.prev_actions = [STAY, STAY]
        self.ball = (config.court_width / 2, mid)
        self.velocity = (0.0, 0.0)
        # The opening serve goes left so neither side can be beaten by a serve
        # it never had control ticks to chase; later serves go to the conceder.
        self._serve(toward=0)
        self.history: deque[PongSnapshot] = deque(maxlen=config.frame_stack)
        # forced no-op ticks before agents gain control
        start_rng = split_rng(seed, "start")
        for _ in range(start_rng.randint(config.noop_min, config.noop_max)):
            self._tick((STAY, STAY))
        self._push_history()

    def snapshot(self) -> PongSnapshot:
        return PongSnapshot(
            paddles=(self.paddles[0], self.paddles[1]),
            ball=self.ball,
            velocity=self.velocity,
            scores=(self.scores[0], self.scores[1]),
        )

    def _push_history(self) -> None:
        self.history.append(self.snapshot())

    def _serve(self, toward: int) -> None:
        cfg = self.config
        vy = self._serve_rng.choice((-2, -1, 1, 2))
        vx = -cfg.ball_speed_x if toward == 0 else cfg.ball_speed_x
        self.ball = (cfg.court_width / 2, cfg.court_height / 2)
        self.velocity = (float(vx), float(vy))

    def _legal_actions(self, agent: int) -> list[str]:
        return list(ACTION_TOKENS)

    def _apply(self, actions: tuple[str, ...]) -> StepResult:
        effective = []
        for i in range(2):
            if self._sticky_rng.random() < self.config.sticky_prob:
                effective.append(self.prev_actions[i])
            else:
                effective.append(actions[i])
        events = self._tick(tuple(effective))
        rewards = [0.0, 0.0]
        for ev in events:
            scorer = ev.actors[0]
            rewards[scorer] += 1.0
            rewards[1 - scorer] -= 1.0
        terminal = max(self.scores) >= self.config.win_score
        self._push_history()
        return StepResult(rewards=tuple(rewards), terminal=terminal,
                          events=tuple(events))

    def _tick(self, effective: tuple[str, str]) -> list[GameEvent]:
        cfg = self.config
        half = cfg.paddle_length / 2
        for i, token in enumerate(effective):
            if token == UP:
                self.paddles[i] -= cfg.paddle_speed
            elif token == DOWN:
                self.paddles[i] += cfg.paddle_speed
            self.paddles[i] = max(half, min(cfg.court_height - half, self.paddles[i]))
            self.prev_actions[i] = token
        old_x, old_y = self.ball
        x = old_x + self.velocity[0]
        y = old_y + self.velocity[1]
        vy = self.velocity[1]
        low, high = cfg.ball_half, cfg.court_height - cfg.ball_half
        if y < low:
            y = 2 * low - y
            vy = -vy
        elif y > high:
            y = 2 * high - y
            vy = -vy
        vx = self.velocity[0]
        left_plane = float(cfg.paddle_inset)
        right_plane = float(cfg.court_width - cfg.paddle_inset)
        reach = half + cfg.ball_half
        if vx < 0 and old_x > left_plane >= x:
            offset = y - self.paddles[0]
            if abs(offset) <= reach:
                x = 2 * left_plane - x
                vx = cfg.ball_speed_x
                vy = float(bounce_band(offset, half))
        elif vx > 0 and old_x < right_plane <= x:
            offset = y - self.paddles[1]
            if abs(offset) <= reach:
                x = 2 * right_plane - x
                vx = -cfg.ball_speed_x
                vy = float(bounce_band(offset, half))
        self.ball = (x, y)
        self.velocity = (vx, vy)
        events: list[GameEvent] = []
        if x < 0:
            self.scores[1] += 1
            events.append(GameEvent(kind="point", actors=(1,), detail="right"))
            self._serve(toward=0)
        elif x > cfg.court_width:
            self.scores[0] += 1
            events.append(GameEvent(kind="point", actors=(0,), detail="left"))
            self._serve(toward=1)
        return events

    def _render_text(self, agent: int) -> str:
        cfg = self.config
        return (
            f"Pong. You are the {SIDE_NAMES[agent]} player.\n"
            f"Court: {cfg.court_width}x{cfg.court_height} "
            "(x grows rightward, y grows downward).\n"
            f"Scores: left {self.scores[0]}, right {self.scores[1]} "
            f"(first to {cfg.win_score} wins).\n"
            f"Left paddle center y: {self.paddles[0]:.1f}. "
            f"Right paddle center y: {self.paddles[1]:.1f}.\n"
            f"Ball position: ({self.ball[0]:.1f}, {self.ball[1]:.1f}). "
            f"Ball velocity: ({self.velocity[0]:.1f}, {self.velocity[1]:.1f}).\n"
            f"Step: {self.steps_taken}."
        )

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        from ..render.images import render_pong_snapshot

        frames = [render_pong_snapshot(self.config, snap) for snap in self.history]
        while len(frames) < self.config.frame_stack:
            frames.insert(0, frames[0])
        return tuple(frames)


def episode_rewards(traj) -> tuple[tuple[int, int], int]:
    """((left points, right points), elapsed ticks) of a finished episode."""
    if not traj.terminal:
        raise ValueError("pong episode rewards are defined on terminal trajectories")
    points = [0, 0]
    for ev in traj.events("point"):
        points[ev.actors[0]] += 1
    return (points[0], points[1]), len(traj.steps)


register("pong", PongEnv)
