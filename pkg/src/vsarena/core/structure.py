"""Reward-structure verification.

The interaction classes are defined by reward laws: cooperative games pay
every agent identically at every step, competitive games are zero-sum, and
mixed-motive games admit at least one step violating both.  This module
probes those laws with random-policy episodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .env import make
from .types import NOOP, split_rng


@dataclass
class StructureReport:
    env: str
    interaction_class: str
    episodes: int
    ok: bool
    violations: list[str] = field(default_factory=list)
    witness: str | None = None  # mixed-motive: the step proving non-coop/non-zero-sum

    def __str__(self) -> str:
        status = "ok" if self.ok else "VIOLATION"
        extra = f" witness={self.witness}" if self.witness else ""
        if self.violations:
            extra += " " + "; ".join(self.violations[:3])
        return f"{self.env} ({self.interaction_class}): {status} over {self.episodes} episodes{extra}"


def _random_joint(env, rng) -> tuple[str, ...]:
    movers = env.current_players()
    out = []
    for agent in range(env.spec.num_agents):
        if agent not in movers:
            out.append(NOOP)
        else:
            legal = env.legal_actions(agent)
            out.append(legal[rng.randrange(len(legal))])
    return tuple(out)


def verify_reward_structure(
    name: str, n_probes: int, seed: int = 0, max_steps: int = 1000
) -> StructureReport:
    """Play ``n_probes`` random episodes and check the class's reward law.

    Cooperative: per-step rewards identical across agents.
    Competitive: episode returns sum to zero.
    Mixed: at least one witness step that is neither identical nor zero-sum.
    """

    probe_env = make(name, 0)
    cls = probe_env.spec.interaction_class
    report = StructureReport(
        env=name, interaction_class=cls, episodes=n_probes, ok=True
    )
    rng = split_rng(seed, f"structure/{name}")
    for episode in range(n_probes):
        ep_seed = rng.getrandbits(48)
        env = make(name, ep_seed)
        policy_rng = split_rng(ep_seed, "probe")
        totals = [0.0] * env.spec.num_agents
        t = 0
        while not env.terminal and t < max_steps:
            result = env.step(_random_joint(env, policy_rng))
            rewards = result.rewards
            for i, r in enumerate(rewards):
                totals[i] += r
            identical = all(r == rewards[0] for r in rewards)
            zero_sum = abs(sum(rewards)) < 1e-9
            if cls == "cooperative" and not identical:
                report.ok = False
                report.violations.append(
                    f"seed={ep_seed} step={t}: non-identical rewards {rewards}"
                )
                break
            if cls == "mixed" and report.witness is None:
                if not identical and not zero_sum:
                    report.witness = f"seed={ep_seed} step={t} rewards={rewards}"
            t += 1
        if cls == "competitive" and env.terminal and abs(sum(totals)) > 1e-9:
            report.ok = False
            report.violations.append(
                f"seed={ep_seed}: returns {tuple(totals)} not zero-sum"
            )
        if not report.ok:
            break
    if cls == "mixed" and report.witness is None:
        report.ok = False
        report.violations.append("no witness step violating both laws was found")
    return report
