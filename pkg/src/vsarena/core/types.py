"""Shared domain types for the game suite.

Every environment is a partially observable Markov game over text action
tokens: agents submit one token each per step, the environment returns
per-agent rewards, typed events, and (on demand) multimodal observations.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field


#: Token submitted by non-moving agents in turn-based games so the joint
#: action always has one entry per agent.
NOOP = "NOOP"

INTERACTION_CLASSES = ("cooperative", "competitive", "mixed")


class IllegalActionError(ValueError):
    """An action token outside the mover's legal set.

    Carries the offending token and the legal set so callers (and remote
    agents) can recover.
    """

    def __init__(self, agent: int, token: str, legal: list[str]):
        self.agent = agent
        self.token = token
        self.legal = list(legal)
        shown = ", ".join(legal[:12]) + (", ..." if len(legal) > 12 else "")
        super().__init__(f"agent {agent}: illegal action {token!r}; legal: [{shown}]")


class StepAfterTerminalError(RuntimeError):
    """step() was called on a finished episode."""


class UnknownEnvironmentError(KeyError):
    """Environment name not present in the registry."""


@dataclass(frozen=True)
class GameSpec:
    """Static description of one environment."""

    name: str
    num_agents: int
    interaction_class: str  # cooperative | competitive | mixed
    max_steps: int | None  # None = unbounded (game terminates by rule)
    action_vocabulary: tuple[tuple[str, ...], ...]  # per agent
    frame_stack: int = 1
    discount: float = 1.0  # housed for completeness; all evaluation is undiscounted

    def __post_init__(self) -> None:
        if self.num_agents < 2:
            raise ValueError("num_agents must be >= 2")
        if self.interaction_class not in INTERACTION_CLASSES:
            raise ValueError(f"unknown interaction class {self.interaction_class!r}")
        if len(self.action_vocabulary) != self.num_agents:
            raise ValueError("one action vocabulary per agent required")
        if any(not vocab for vocab in self.action_vocabulary):
            raise ValueError("action vocabulary must be non-empty per agent")
        if not 0.0 < self.discount <= 1.0:
            raise ValueError("discount must be in (0, 1]")


@dataclass(frozen=True)
class Observation:
    """What one agent sees: a raster frame sequence plus an equivalent text view.

    ``frames`` holds PNG bytes, most recent last, with length equal to the
    environment's frame stack (4 for Pong/Overcooked, 1 elsewhere).  Text-only
    consumers may request observations without frames, in which case
    ``frames`` is empty.
    """

    frames: tuple[bytes, ...]
    text: str


@dataclass(frozen=True)
class GameEvent:
    """A typed, reward-bearing occurrence inside a step."""

    kind: str
    actors: tuple[int, ...] = ()
    detail: str = ""

    def tag(self) -> str:
        actors = ",".join(str(a) for a in self.actors)
        return f"{self.kind}[{actors}]" + (f":{self.detail}" if self.detail else "")


@dataclass
class StepResult:
    rewards: tuple[float, ...]
    terminal: bool
    events: tuple[GameEvent, ...] = ()
    # Filled by callers that need observations; step() itself leaves it None
    # so search agents and bulk verification never pay for rendering.
    observations: tuple[Observation, ...] | None = None


@dataclass
class TrajectoryStep:
    actions: tuple[str, ...]
    rewards: tuple[float, ...]
    events: tuple[GameEvent, ...]
    texts: tuple[str, ...] | None = None  # per-agent text observations, if recorded


@dataclass
class Trajectory:
    """A seeded episode record; fully reproducible from (spec, seed, actions)."""

    spec: GameSpec
    seed: int
    steps: list[TrajectoryStep] = field(default_factory=list)
    terminal: bool = False

    @property
    def returns(self) -> tuple[float, ...]:
        totals = [0.0] * self.spec.num_agents
        for step in self.steps:
            for i, r in enumerate(step.rewards):
                totals[i] += r
        return tuple(totals)

    @property
    def actions(self) -> list[tuple[str, ...]]:
        return [step.actions for step in self.steps]

    def events(self, kind: str | None = None) -> list[GameEvent]:
        out: list[GameEvent] = []
        for step in self.steps:
            for ev in step.events:
                if kind is None or ev.kind == kind:
                    out.append(ev)
        return out


def split_rng(seed: int, label: str) -> random.Random:
    """Derive an independent, platform-stable RNG for one subsystem.

    Each environment owns one base seed and splits it per subsystem (deal,
    respawn, sticky action, ...) so partial replays stay reproducible.
    """

    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
