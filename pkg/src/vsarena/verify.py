"""Release-gate verification: the cross-module invariant suites.

Runs the reward-structure law over every registered environment, Hanabi card
conservation and score laws, the exhaustive Kuhn payout table and the NE
best-response oracle, grid outcome-equivalence against brute-force
simulation, and determinism replays.  Each failure names the module,
invariant, and seed.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .agents import RandomPolicy, best_response_gain, ne_profile, seat0_value
from .core import make, registered_envs, replay, run_episode, split_rng
from .core.runner import replay_to_step
from .dataset.samples import equivalence_set
from .games.grid import MOVE_TOKENS
from .games.kuhn import CARDS, settle


def verify_structures(probes: int, seed: int) -> list[str]:
    from .core import verify_reward_structure

    failures = []
    for name in registered_envs():
        report = verify_reward_structure(name, probes, seed=seed)
        status = "ok" if report.ok else "FAIL"
        print(f"[{status}] reward-structure {report}")
        if not report.ok:
            failures.append(f"reward-structure/{name}: {report.violations[:1]}")
    return failures


def _hanabi_multisets(env) -> tuple[Counter, Counter]:
    held = Counter(env.deck)
    for hand in env.hands:
        held.update(hand)
    held.update(env.discard_pile)
    for color, top in env.fireworks.items():
        for rank in range(1, top + 1):
            held[(color, rank)] += 1
    return held, Counter(env.config.full_deck())


def verify_hanabi_conservation(episodes: int, seed: int, env_name: str = "hanabi") -> list[str]:
    failures = []
    rng = split_rng(seed, f"verify/{env_name}")
    policy_rng = split_rng(seed, "verify/hanabi-policy")
    for _ in range(episodes):
        ep_seed = rng.getrandbits(48)
        env = make(env_name, ep_seed)
        shared = 0.0
        step = 0
        while not env.terminal:
            legal = env.legal_actions(env.to_move)
            token = legal[policy_rng.randrange(len(legal))]
            joint = ["NOOP", "NOOP"]
            joint[env.to_move] = token
            result = env.step(tuple(joint))
            if result.rewards[0] != result.rewards[1]:
                failures.append(f"{env_name} seed={ep_seed} step={step}: unequal rewards")
                break
            shared += result.rewards[0]
            held, full = _hanabi_multisets(env)
            if held != full:
                failures.append(
                    f"{env_name} seed={ep_seed} step={step}: card multiset broken"
                )
                break
            if shared != env.firework_sum():
                failures.append(
                    f"{env_name} seed={ep_seed} step={step}: cumulative reward "
                    f"{shared} != firework sum {env.firework_sum()}"
                )
                break
            step += 1
        if failures:
            break
    status = "ok" if not failures else "FAIL"
    print(f"[{status}] {env_name}-conservation ({episodes} episodes)")
    return failures


#: The exhaustive payout table: every deal x every terminal history, net
#: chips for player 0, written out from the game rules by hand.
KUHN_PAYOUT_TABLE: dict[tuple[str, str], dict[str, int]] = {
    ("J", "Q"): {"PP": -1, "BP": 1, "BB": -2, "PBP": -1, "PBB": -2},
    ("J", "K"): {"PP": -1, "BP": 1, "BB": -2, "PBP": -1, "PBB": -2},
    ("Q", "J"): {"PP": 1, "BP": 1, "BB": 2, "PBP": -1, "PBB": 2},
    ("Q", "K"): {"PP": -1, "BP": 1, "BB": -2, "PBP": -1, "PBB": -2},
    ("K", "J"): {"PP": 1, "BP": 1, "BB": 2, "PBP": -1, "PBB": 2},
    ("K", "Q"): {"PP": 1, "BP": 1, "BB": 2, "PBP": -1, "PBB": 2},
}


def verify_kuhn(tolerance: float = 1e-12) -> list[str]:
    failures = []
    for deal, by_history in KUHN_PAYOUT_TABLE.items():
        for history, expected in by_history.items():
            got = settle(history, deal)
            if got is None or got[0] != expected or got[0] + got[1] != 0:
                failures.append(f"kuhn payout {deal} {history}: {got} != {expected}")
    for alpha in (0, Fraction(1, 6), Fraction(1, 3)):
        profile = ne_profile(alpha)
        value = seat0_value(profile, profile)
        if abs(value - Fraction(-1, 18)) > tolerance:
            failures.append(f"kuhn NE alpha={alpha}: value {value} != -1/18")
        for seat in (0, 1):
            gain = best_response_gain(profile, seat)
            if gain > tolerance:
                failures.append(
                    f"kuhn NE alpha={alpha} seat {seat}: exploitable by {gain}"
                )
    status = "ok" if not failures else "FAIL"
    print(f"[{status}] kuhn payout table + NE best-response oracle")
    return failures


def brute_force_equivalence(env_name: str, seed: int, actions, step: int,
                            agent: int, ground_truth: str) -> list[str]:
    """Simulate all five movement tokens and group identical transitions."""
    other = 1 - agent
    fixed = actions[step][other]
    outcomes = {}
    for token in MOVE_TOKENS:
        env = replay_to_step(env_name, seed, actions, step)
        joint = [None, None]
        joint[agent] = token
        joint[other] = fixed
        result = env.step(tuple(joint))
        outcomes[token] = (
            tuple(env.players),
            tuple(sorted(env._entity_cells())),
            tuple(sorted((ev.kind, ev.actors) for ev in result.events)),
            result.rewards,
        )
    return sorted(t for t in MOVE_TOKENS if outcomes[t] == outcomes[ground_truth])


def verify_equivalence(states: int, seed: int) -> list[str]:
    failures = []
    rng = split_rng(seed, "verify/equivalence")
    envs = ("coin", "hunt", "battle")
    per_env = max(1, states // len(envs))
    for env_name in envs:
        for _ in range(per_env):
            ep_seed = rng.getrandbits(48)
            length = rng.randrange(1, 30)
            traj = run_episode(
                env_name, ep_seed, [RandomPolicy(), RandomPolicy()], max_steps=length
            )
            if not traj.steps:
                continue
            step = rng.randrange(len(traj.steps))
            agent = rng.randrange(2)
            ground_truth = traj.steps[step].actions[agent]
            env = replay_to_step(env_name, ep_seed, traj.actions, step)
            fast = equivalence_set(env, agent, ground_truth)
            brute = brute_force_equivalence(
                env_name, ep_seed, traj.actions, step, agent, ground_truth
            )
            if fast != brute:
                failures.append(
                    f"equivalence/{env_name} seed={ep_seed} step={step}: "
                    f"fast {fast} != brute {brute}"
                )
    status = "ok" if not failures else "FAIL"
    print(f"[{status}] grid outcome-equivalence vs brute force ({states} states)")
    return failures


def verify_determinism(seed: int) -> list[str]:
    failures = []
    for name in registered_envs():
        ep_seed = split_rng(seed, f"verify/det/{name}").getrandbits(48)
        first = run_episode(name, ep_seed, [RandomPolicy(), RandomPolicy()],
                            max_steps=120)
        second = run_episode(name, ep_seed, [RandomPolicy(), RandomPolicy()],
                             max_steps=120)
        replayed = replay(name, ep_seed, first.actions)
        for label, other in (("rerun", second), ("replay", replayed)):
            same = (
                len(first.steps) == len(other.steps)
                and all(
                    a.actions == b.actions
                    and a.rewards == b.rewards
                    and a.events == b.events
                    for a, b in zip(first.steps, other.steps)
                )
            )
            if not same:
                failures.append(f"determinism/{name} seed={ep_seed}: {label} differs")
    status = "ok" if not failures else "FAIL"
    print(f"[{status}] determinism replays ({len(registered_envs())} envs)")
    return failures


def run_verification(probes: int = 100, seed: int = 0) -> list[str]:
    """All suites; returns the list of failures (empty = release-ready)."""
    failures: list[str] = []
    failures += verify_structures(probes, seed)
    failures += verify_hanabi_conservation(max(20, probes // 5), seed)
    failures += verify_hanabi_conservation(max(20, probes // 5), seed, "tiny-hanabi")
    failures += verify_kuhn()
    failures += verify_equivalence(max(30, probes), seed)
    failures += verify_determinism(seed)
    if failures:
        print(f"\nVERIFY FAILED: {len(failures)} failure(s)")
        for failure in failures:
            print(f"  - {failure}")
    else:
        print("\nVERIFY OK")
    return failures
