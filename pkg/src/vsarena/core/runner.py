"""Episode runner and trajectory (de)serialization."""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import IO, Sequence

from .env import Environment, make
from .types import NOOP, Trajectory, TrajectoryStep, split_rng


class PolicyError(RuntimeError):
    """A policy raised while acting; carries the step index and agent."""

    def __init__(self, agent: int, step: int, cause: BaseException):
        self.agent = agent
        self.step = step
        super().__init__(f"policy for agent {agent} failed at step {step}: {cause!r}")


def run_episode(
    name: str,
    seed: int,
    policies: Sequence,
    max_steps: int | None = None,
    record_text: bool = False,
    observation_mode: str = "multimodal",
) -> Trajectory:
    """Play one full episode and record it.

    One policy per agent.  Non-movers in turn-based games are not consulted;
    the runner submits NOOP for them.  Policy exceptions abort the episode
    with the step index attached.
    """

    env = make(name, seed)
    if len(policies) != env.spec.num_agents:
        raise ValueError(f"need {env.spec.num_agents} policies, got {len(policies)}")
    rngs = [split_rng(seed, f"policy/{i}") for i in range(env.spec.num_agents)]
    traj = Trajectory(spec=env.spec, seed=seed)
    while not env.terminal:
        if max_steps is not None and len(traj.steps) >= max_steps:
            break
        movers = env.current_players()
        actions: list[str] = []
        for agent in range(env.spec.num_agents):
            if agent not in movers:
                actions.append(NOOP)
                continue
            legal = env.legal_actions(agent)
            policy = policies[agent]
            view = env
            if getattr(policy, "requires", "env") == "observation":
                view = env.observe(
                    agent, include_frames=observation_mode == "multimodal"
                )
            try:
                actions.append(policy.act(view, agent, legal, rngs[agent]))
            except Exception as exc:  # noqa: BLE001 - wrap with context
                raise PolicyError(agent, len(traj.steps), exc) from exc
        texts = None
        if record_text:
            texts = tuple(
                env.observe(i, include_frames=False).text
                for i in range(env.spec.num_agents)
            )
        result = env.step(tuple(actions))
        traj.steps.append(
            TrajectoryStep(
                actions=tuple(actions),
                rewards=result.rewards,
                events=result.events,
                texts=texts,
            )
        )
    traj.terminal = env.terminal
    return traj


def replay(name: str, seed: int, actions: Sequence[Sequence[str]]) -> Trajectory:
    """Rebuild a trajectory from its seed and action list.

    Determinism contract: the result is identical to the original episode.
    """

    env = make(name, seed)
    traj = Trajectory(spec=env.spec, seed=seed)
    for joint in actions:
        result = env.step(tuple(joint))
        traj.steps.append(
            TrajectoryStep(
                actions=tuple(joint), rewards=result.rewards, events=result.events
            )
        )
    traj.terminal = env.terminal
    return traj


def replay_to_step(name: str, seed: int, actions: Sequence[Sequence[str]], step: int) -> Environment:
    """Rebuild the live environment as it stood *before* ``actions[step]``."""

    env = make(name, seed)
    for joint in list(actions)[:step]:
        env.step(tuple(joint))
    return env


# -- JSONL wire format ------------------------------------------------


def write_trajectory(traj: Trajectory, fp: IO[str], participants: Sequence[str] = ()) -> None:
    """One header record, then one record per step."""

    now = datetime.now(timezone.utc).isoformat()
    header = {
        "kind": "header",
        "timestamp": now,
        "env": traj.spec.name,
        "seed": traj.seed,
        "num_agents": traj.spec.num_agents,
        "interaction_class": traj.spec.interaction_class,
        "participants": list(participants),
        "terminal": traj.terminal,
        "returns": list(traj.returns),
    }
    fp.write(json.dumps(header) + "\n")
    for t, step in enumerate(traj.steps):
        record = {
            "kind": "step",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "t": t,
            "actions": list(step.actions),
            "rewards": list(step.rewards),
            "events": [ev.tag() for ev in step.events],
        }
        if step.texts is not None:
            record["texts"] = list(step.texts)
        fp.write(json.dumps(record) + "\n")


def read_trajectory_actions(fp: IO[str]) -> tuple[str, int, list[tuple[str, ...]]]:
    """Read (env name, seed, action list) back from a JSONL trajectory file."""

    header = json.loads(fp.readline())
    if header.get("kind") != "header":
        raise ValueError("trajectory file must start with a header record")
    actions = []
    for line in fp:
        line = line.strip()
        if not line:
            continue
        record = json.loads(line)
        if record.get("kind") == "step":
            actions.append(tuple(record["actions"]))
    return header["env"], header["seed"], actions


def event_counts(traj: Trajectory) -> dict[str, int]:
    counts: dict[str, int] = {}
    for step in traj.steps:
        for ev in step.events:
            counts[ev.kind] = counts.get(ev.kind, 0) + 1
    return counts


def events_by_actor(traj: Trajectory, kind: str) -> dict[int, int]:
    counts: dict[int, int] = {}
    for ev in traj.events(kind):
        for actor in ev.actors:
            counts[actor] = counts.get(actor, 0) + 1
    return counts
