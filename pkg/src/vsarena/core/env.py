"""Environment base class and registry.

An Environment instance is the live game state machine: ``make(name, seed)``
constructs it in its initial state, ``step`` advances it with one text token
per agent, and ``observe`` produces the multimodal view for one agent.
Instances are independent; a single instance must only be mutated by one
worker at a time.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Callable

from .types import (
    NOOP,
    GameSpec,
    IllegalActionError,
    Observation,
    StepAfterTerminalError,
    StepResult,
    UnknownEnvironmentError,
)


class Environment(ABC):
    """Contract every game implements."""

    spec: GameSpec

    def __init__(self, spec: GameSpec, seed: int):
        self.spec = spec
        self.seed = seed
        self.steps_taken = 0
        self._terminal = False

    # -- state machine ------------------------------------------------

    @property
    def terminal(self) -> bool:
        return self._terminal

    def current_players(self) -> tuple[int, ...]:
        """Agents expected to act this step; others must submit NOOP."""
        return tuple(range(self.spec.num_agents))

    def legal_actions(self, agent: int) -> list[str]:
        if self._terminal:
            return []
        if agent not in self.current_players():
            return [NOOP]
        return self._legal_actions(agent)

    def step(self, actions: tuple[str, ...] | list[str]) -> StepResult:
        if self._terminal:
            raise StepAfterTerminalError(f"{self.spec.name}: episode already terminal")
        actions = tuple(actions)
        if len(actions) != self.spec.num_agents:
            raise ValueError(
                f"expected {self.spec.num_agents} actions, got {len(actions)}"
            )
        for agent, token in enumerate(actions):
            legal = self.legal_actions(agent)
            if token not in legal:
                raise IllegalActionError(agent, token, legal)
        result = self._apply(actions)
        self.steps_taken += 1
        if result.terminal:
            self._terminal = True
        elif self.spec.max_steps is not None and self.steps_taken >= self.spec.max_steps:
            self._terminal = True
            result.terminal = True
        return result

    def observe(self, agent: int, include_frames: bool = True) -> Observation:
        """Build the (frames, text) observation for one agent.

        ``include_frames=False`` serves text-only evaluation and skips all
        rasterization work.
        """
        text = self._render_text(agent)
        frames: tuple[bytes, ...] = ()
        if include_frames:
            frames = self._render_frames(agent)
            if len(frames) != self.spec.frame_stack:
                raise AssertionError(
                    f"{self.spec.name}: frame stack {len(frames)} != {self.spec.frame_stack}"
                )
        return Observation(frames=frames, text=text)

    # -- game-specific hooks -------------------------------------------

    @abstractmethod
    def _legal_actions(self, agent: int) -> list[str]: ...

    @abstractmethod
    def _apply(self, actions: tuple[str, ...]) -> StepResult: ...

    @abstractmethod
    def _render_text(self, agent: int) -> str: ...

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        # Default: a single frame of the current state.  Frame-stacking
        # environments override this with their history buffer.
        from ..render.images import render_image

        return (render_image(self, agent),)


_REGISTRY: dict[str, Callable[[int], Environment]] = {}


def register(name: str, factory: Callable[[int], Environment]) -> None:
    _REGISTRY[name] = factory


def registered_envs() -> list[str]:
    _ensure_loaded()
    return sorted(_REGISTRY)


def make(name: str, seed: int) -> Environment:
    """Instantiate a registered environment in its seeded initial state."""
    _ensure_loaded()
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise UnknownEnvironmentError(
            f"unknown environment {name!r}; registered: {', '.join(sorted(_REGISTRY))}"
        ) from None
    return factory(seed)


def reset(name: str, seed: int) -> tuple[Environment, tuple[Observation, ...]]:
    """Spec-level reset: build the env and the per-agent initial observations."""
    env = make(name, seed)
    obs = tuple(env.observe(i) for i in range(env.spec.num_agents))
    return env, obs


def _ensure_loaded() -> None:
    # Game modules self-register on import; import lazily to avoid cycles.
    if _REGISTRY:
        return
    from ..games import breakthrough, grid, hanabi, kuhn, overcooked, pong, tictactoe  # noqa: F401
