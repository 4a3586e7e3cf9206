from .env import Environment, make, registered_envs, reset
from .runner import PolicyError, replay, replay_to_step, run_episode
from .structure import verify_reward_structure
from .types import (
    NOOP,
    GameEvent,
    GameSpec,
    IllegalActionError,
    Observation,
    StepAfterTerminalError,
    StepResult,
    Trajectory,
    TrajectoryStep,
    UnknownEnvironmentError,
    split_rng,
)

__all__ = [
    "Environment",
    "GameEvent",
    "GameSpec",
    "IllegalActionError",
    "NOOP",
    "Observation",
    "PolicyError",
    "StepAfterTerminalError",
    "StepResult",
    "Trajectory",
    "TrajectoryStep",
    "UnknownEnvironmentError",
    "make",
    "registered_envs",
    "replay",
    "replay_to_step",
    "reset",
    "run_episode",
    "split_rng",
    "verify_reward_structure",
]
