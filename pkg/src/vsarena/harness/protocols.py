"""Online evaluation protocols and report generation.

Each environment has a fixed match format: self-play for the cooperative and
mixed-motive games, and matches against a conventional opponent (MCTS, the
Kuhn NE strategy, or the built-in Pong bot) for the competitive ones.
Breakthrough and Kuhn balance seats exactly; Kuhn evaluates ten runs of 120
games and reports statistics over the run means.  Raw returns are normalized
so the random baseline sits at 0 and the oracle at 100.
"""

from __future__ import annotations

import json
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..core.runner import PolicyError, run_episode
from ..core.types import Trajectory, split_rng
from ..games.hanabi import hanabi_returns
from ..games.pong import episode_rewards as pong_episode_rewards
from .counters import behavior_counters
from .references import (
    PUBLISHED,
    baseline_policy,
    normalize,
    opponent_policy,
    oracle_policies,
)


@dataclass(frozen=True)
class EvalProtocol:
    env: str
    episodes: int
    opponent: str | None = None  # None = self-play
    seat_balanced: bool = False
    runs: int = 1  # >1: `episodes` games per run, stats over run means
    evaluated_seat: int | None = None  # pinned seat (pong: right paddle)


PROTOCOLS: dict[str, EvalProtocol] = {
    "hanabi": EvalProtocol("hanabi", episodes=10),
    "tiny-hanabi": EvalProtocol("tiny-hanabi", episodes=10),
    "overcooked": EvalProtocol("overcooked", episodes=10),
    "breakthrough": EvalProtocol(
        "breakthrough", episodes=20, opponent="mcts", seat_balanced=True
    ),
    "kuhn": EvalProtocol(
        "kuhn", episodes=120, opponent="ne", seat_balanced=True, runs=10
    ),
    "tictactoe": EvalProtocol(
        "tictactoe", episodes=20, opponent="mcts", seat_balanced=True
    ),
    "pong": EvalProtocol("pong", episodes=10, opponent="bot", evaluated_seat=1),
    "coin": EvalProtocol("coin", episodes=10),
    "hunt": EvalProtocol("hunt", episodes=10),
    "battle": EvalProtocol("battle", episodes=10),
}


@dataclass
class EvalReport:
    env: str
    agent: str
    episodes: int
    aborted: int
    raw_mean: float
    raw_std: float
    normalized_mean: float
    normalized_std: float
    references: dict[str, tuple[float, float]]
    extra: dict[str, float] = field(default_factory=dict)
    counters: dict[str, int] = field(default_factory=dict)
    per_episode: list[float] = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "env": self.env,
            "agent": self.agent,
            "episodes": self.episodes,
            "aborted": self.aborted,
            "raw": {"mean": self.raw_mean, "std": self.raw_std},
            "normalized": {
                "mean": self.normalized_mean,
                "std": self.normalized_std,
            },
            "references": {
                k: {"random": r, "optimal": o}
                for k, (r, o) in self.references.items()
            },
            "extra": self.extra,
            "counters": self.counters,
            "per_episode": self.per_episode,
        }
        return json.dumps(payload, indent=2)

    def to_table(self) -> str:
        lines = [
            f"environment : {self.env}",
            f"agent       : {self.agent}",
            f"episodes    : {self.episodes} (aborted {self.aborted})",
            f"raw return  : {self.raw_mean:.3f} +/- {self.raw_std:.3f}",
            f"normalized  : {self.normalized_mean:.1f} +/- {self.normalized_std:.1f}",
        ]
        for key, (rand_ref, opt_ref) in self.references.items():
            lines.append(f"reference   : {key} random={rand_ref} optimal={opt_ref}")
        for key, value in self.extra.items():
            lines.append(f"{key:12s}: {value:.3f}")
        if self.counters:
            lines.append("behavior counters:")
            for label, count in self.counters.items():
                lines.append(f"  {label}: {count}")
        return "\n".join(lines)


def _mean_std(values: list[float]) -> tuple[float, float]:
    if not values:
        return math.nan, math.nan
    if len(values) == 1:
        return values[0], 0.0
    return statistics.fmean(values), statistics.pstdev(values)


def _fresh_policies(protocol: EvalProtocol, policy_factory, seat: int) -> list:
    """Per-episode policy instances: evaluated at ``seat``, opponent opposite."""
    if protocol.opponent is None:
        return [policy_factory(), policy_factory()]
    opponent = opponent_policy(protocol.env)
    policies: list = [None, None]
    policies[seat] = policy_factory()
    policies[1 - seat] = opponent
    return policies


def _episode_value(env_name: str, traj: Trajectory, seat: int) -> float:
    if env_name in ("hanabi", "tiny-hanabi", "overcooked"):
        return traj.returns[0]  # shared
    if env_name in ("coin", "hunt", "battle"):
        return (traj.returns[0] + traj.returns[1]) / 2.0
    return traj.returns[seat]


def run_protocol(
    env_name: str,
    policy_factory,
    agent_label: str = "agent",
    seed: int = 0,
    observation_mode: str = "multimodal",
    max_workers: int = 1,
    episodes_override: int | None = None,
) -> EvalReport:
    """Execute the environment's protocol for the policy under test."""
    protocol = PROTOCOLS[env_name]
    episodes = episodes_override or protocol.episodes
    total_games = episodes * protocol.runs
    seed_rng = split_rng(seed, f"protocol/{env_name}")
    game_seeds = [seed_rng.getrandbits(48) for _ in range(total_games)]

    def game_seat(index: int) -> int:
        if protocol.evaluated_seat is not None:
            return protocol.evaluated_seat
        if not protocol.seat_balanced:
            return 0
        # exactly half the games of each run in each seat
        within = index % episodes
        return 0 if within < episodes // 2 else 1

    def play(index: int):
        game_seed = game_seeds[index]
        seat = game_seat(index)
        policies = _fresh_policies(protocol, policy_factory, seat)
        traj = run_episode(
            env_name, game_seed, policies, observation_mode=observation_mode
        )
        return index, seat, traj

    results: list[tuple[int, int, Trajectory]] = []
    aborted = 0
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = [pool.submit(play, i) for i in range(total_games)]
            for future in futures:
                try:
                    results.append(future.result())
                except PolicyError:
                    aborted += 1
    else:
        for i in range(total_games):
            try:
                results.append(play(i))
            except PolicyError:
                aborted += 1
    results.sort(key=lambda item: item[0])

    values = [
        _episode_value(env_name, traj, seat) for _, seat, traj in results
    ]
    trajectories = [traj for _, _, traj in results]
    if protocol.runs > 1:
        by_run: dict[int, list[float]] = {}
        for (index, _, traj), value in zip(results, values):
            by_run.setdefault(index // episodes, []).append(value)
        run_means = [
            statistics.fmean(by_run[run]) for run in sorted(by_run) if by_run[run]
        ]
        raw_mean, raw_std = _mean_std(run_means)
        per_episode = run_means
    else:
        raw_mean, raw_std = _mean_std(values)
        per_episode = values

    references: dict[str, tuple[float, float]] = {}
    extra: dict[str, float] = {}
    counters: dict[str, int] = {}

    if env_name in ("hanabi", "tiny-hanabi"):
        standards, fireworks = [], []
        for traj in trajectories:
            standard, firework = hanabi_returns(traj)
            standards.append(standard)
            fireworks.append(firework)
        raw_mean, raw_std = _mean_std(standards)
        per_episode = standards
        fw_mean, fw_std = _mean_std(fireworks)
        extra["firework_raw_mean"] = fw_mean
        extra["firework_raw_std"] = fw_std
        ref = PUBLISHED[env_name]
        references[env_name] = (ref.random, ref.optimal)
        normalized = [normalize(v, ref.random, ref.optimal) for v in standards]
    elif env_name == "pong":
        scores, steps = [], []
        for _, seat, traj in results:
            (left, right), ticks = pong_episode_rewards(traj)
            scores.append(float(right if seat == 1 else left))
            steps.append(float(ticks))
        raw_mean, raw_std = _mean_std(scores)
        per_episode = scores
        score_ref = PUBLISHED["pong-score"]
        step_ref = PUBLISHED["pong-step"]
        references["pong-score"] = (score_ref.random, score_ref.optimal)
        references["pong-step"] = (step_ref.random, step_ref.optimal)
        norm_scores = [normalize(v, score_ref.random, score_ref.optimal) for v in scores]
        norm_steps = [normalize(v, step_ref.random, step_ref.optimal) for v in steps]
        # overall = 0.9 * normalized score + 0.1 * normalized step
        normalized = [0.9 * s + 0.1 * t for s, t in zip(norm_scores, norm_steps)]
        extra["step_raw_mean"] = statistics.fmean(steps) if steps else math.nan
        extra["score_normalized_mean"] = (
            statistics.fmean(norm_scores) if norm_scores else math.nan
        )
        extra["step_normalized_mean"] = (
            statistics.fmean(norm_steps) if norm_steps else math.nan
        )
    else:
        ref = PUBLISHED[env_name]
        references[env_name] = (ref.random, ref.optimal)
        normalized = [normalize(v, ref.random, ref.optimal) for v in per_episode]

    if env_name in ("coin", "hunt", "battle"):
        counters = behavior_counters(trajectories, env_name)

    norm_mean, norm_std = _mean_std(normalized)
    return EvalReport(
        env=env_name,
        agent=agent_label,
        episodes=len(per_episode),
        aborted=aborted,
        raw_mean=raw_mean,
        raw_std=raw_std,
        normalized_mean=norm_mean,
        normalized_std=norm_std,
        references=references,
        extra=extra,
        counters=counters,
        per_episode=per_episode,
    )


def compute_reference(
    env_name: str, kind: str, n: int = 100, seed: int = 0
) -> float:
    """Monte-Carlo raw reference: mean protocol value of random|oracle play."""
    policies = baseline_policy(env_name, kind)

    if len(policies) == 1:
        policy = policies[0]
        factory = lambda: policy  # noqa: E731 - stateless baseline policies
    else:
        pair = list(policies)
        counter = {"i": 0}

        def factory():
            policy = pair[counter["i"] % 2]
            counter["i"] += 1
            return policy

    report = run_protocol(
        env_name,
        factory,
        agent_label=f"{kind}-reference",
        seed=seed,
        episodes_override=max(1, n // PROTOCOLS[env_name].runs),
    )
    return report.raw_mean
