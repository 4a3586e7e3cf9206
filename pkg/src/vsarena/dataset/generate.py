"""Dataset generation: simulate strategy pairs, pool candidate decision
points, sample to the recipe's balance targets, and materialize observations
by deterministic replay.

A candidate is one step of one episode where the predicted agent acts; the
observer is the other agent.  Candidates are tagged with the step decile so
"uniform step index" sampling can stratify over episode progress instead of
over-weighting short games.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..agents import NoisyPolicy, PongTrackerPolicy, parse_agent_spec
from ..agents.scripted import (
    HanabiHeuristicPolicy,
    ORACLE_CHEF0,
    ORACLE_CHEF1,
    ScriptedPolicy,
)
from ..core.env import make
from ..core.runner import replay_to_step, run_episode
from ..core.types import NOOP, split_rng
from .recipes import DatasetRecipe, Setting, default_recipe
from .samples import ReasoningSample, equivalence_set


class InfeasibleRecipeError(ValueError):
    """The candidate pools cannot satisfy the recipe's balance constraints."""


@dataclass
class Candidate:
    pair: str
    seed: int
    actions: list[tuple[str, ...]]
    step: int
    observer: int
    predicted: int
    ground_truth: str
    decile: int
    tag: str = ""  # env-specific (hanabi action type, overcooked validity)


def _policy(spec: str, seat: int):
    """Recipe policy specs, including dataset-only scripted composites."""
    if spec == "chef-oracle":
        return ScriptedPolicy(ORACLE_CHEF0 if seat == 0 else ORACLE_CHEF1)
    if spec.startswith("noisy-chef"):
        _, _, rest = spec.partition(":")
        eps = float(dict(p.split("=") for p in rest.split(","))["eps"])
        inner = ScriptedPolicy(ORACLE_CHEF0 if seat == 0 else ORACLE_CHEF1)
        return NoisyPolicy(inner, eps)
    if spec.startswith("noisy-tracker"):
        _, _, rest = spec.partition(":")
        eps = float(dict(p.split("=") for p in rest.split(","))["eps"])
        return NoisyPolicy(PongTrackerPolicy(aim=0), eps)
    if spec == "hanabi-strong":
        return HanabiHeuristicPolicy(recklessness=0.1)
    if spec == "hanabi-weak":
        return HanabiHeuristicPolicy(recklessness=0.5)
    return parse_agent_spec(spec)


def _candidates_from_trajectory(
    traj, setting: Setting, seed: int, turn_based: bool
) -> list[Candidate]:
    out = []
    actions = traj.actions
    n = max(len(actions), 1)
    for t, joint in enumerate(actions):
        decile = min(9, 10 * t // n)
        if turn_based:
            movers = [i for i, token in enumerate(joint) if token != NOOP]
            if len(movers) != 1:
                continue
            predicted = movers[0]
            observer = 1 - predicted
            if setting.observer is not None and observer != setting.observer:
                continue
            out.append(
                Candidate(
                    pair=setting.label,
                    seed=seed,
                    actions=actions,
                    step=t,
                    observer=observer,
                    predicted=predicted,
                    ground_truth=joint[predicted],
                    decile=decile,
                )
            )
        else:
            observers = (
                (setting.observer,) if setting.observer is not None else (0, 1)
            )
            for observer in observers:
                predicted = 1 - observer
                out.append(
                    Candidate(
                        pair=setting.label,
                        seed=seed,
                        actions=actions,
                        step=t,
                        observer=observer,
                        predicted=predicted,
                        ground_truth=joint[predicted],
                        decile=decile,
                    )
                )
    return out


def _stratified_sample(
    pool: list[Candidate], count: int, rng: random.Random
) -> list[Candidate]:
    """Uniform over step deciles: round-robin across decile buckets."""
    if len(pool) < count:
        raise InfeasibleRecipeError(
            f"pool of {len(pool)} candidates cannot fill quota {count}"
        )
    buckets: dict[int, list[Candidate]] = {}
    for cand in pool:
        buckets.setdefault(cand.decile, []).append(cand)
    for bucket in buckets.values():
        rng.shuffle(bucket)
    chosen: list[Candidate] = []
    order = sorted(buckets)
    while len(chosen) < count:
        progressed = False
        for d in order:
            if buckets[d] and len(chosen) < count:
                chosen.append(buckets[d].pop())
                progressed = True
        if not progressed:
            raise InfeasibleRecipeError("decile buckets exhausted early")
    return chosen


def _alternating_observer_sample(
    pool: list[Candidate], count: int, rng: random.Random
) -> list[Candidate]:
    """Half the quota from each observer (extra sample to observer 0)."""
    by_observer = {0: [], 1: []}
    for cand in pool:
        by_observer[cand.observer].append(cand)
    want0 = count - count // 2
    want1 = count // 2
    out = []
    for observer, want in ((0, want0), (1, want1)):
        out.extend(_stratified_sample(by_observer[observer], want, rng))
    return out


# -- per-environment pool builders -------------------------------------------


def _grid_pool(env_name: str, recipe: DatasetRecipe, seed: int):
    chosen: list[Candidate] = []
    composition: dict[str, int] = {}
    for s_index, setting in enumerate(recipe.settings):
        rng = split_rng(seed, f"sample/{setting.label}")
        pool: list[Candidate] = []
        for episode in range(recipe.episodes_per_setting):
            ep_seed = split_rng(seed, f"ep/{s_index}/{episode}").getrandbits(48)
            policies = [
                _policy(setting.seats[i], i) for i in range(2)
            ]
            traj = run_episode(env_name, ep_seed, policies)
            pool.extend(
                _candidates_from_trajectory(traj, setting, ep_seed, turn_based=False)
            )
        take = _alternating_observer_sample(pool, setting.count, rng)
        chosen.extend(take)
        composition[setting.label] = len(take)
    return chosen, {"composition": composition}


def _kuhn_pool(recipe: DatasetRecipe, seed: int):
    pool: list[Candidate] = []
    games_per_combo: dict[str, int] = {}
    for s_index, setting in enumerate(recipe.settings):
        for game in range(recipe.kuhn_games_per_combo):
            ep_seed = split_rng(seed, f"kuhn/{s_index}/{game}").getrandbits(48)
            policies = [_policy(setting.seats[i], i) for i in range(2)]
            traj = run_episode("kuhn", ep_seed, policies)
            pool.extend(
                _candidates_from_trajectory(traj, setting, ep_seed, turn_based=True)
            )
        games_per_combo[setting.label] = recipe.kuhn_games_per_combo
    rng = split_rng(seed, "sample/kuhn")
    chosen = rng.sample(pool, recipe.total)
    composition: dict[str, int] = {}
    for cand in chosen:
        composition[cand.pair] = composition.get(cand.pair, 0) + 1
    return chosen, {
        "composition": composition,
        "games_simulated": games_per_combo,
    }


def _breakthrough_pool(recipe: DatasetRecipe, seed: int):
    chosen: list[Candidate] = []
    composition: dict[str, int] = {}
    for s_index, setting in enumerate(recipe.settings):
        rng = split_rng(seed, f"sample/{setting.label}")
        pool: list[Candidate] = []
        attempt = 0
        while len(pool) < setting.count and attempt < 8:
            ep_seed = split_rng(seed, f"bt/{s_index}/{attempt}").getrandbits(48)
            policies = [_policy(setting.seats[i], i) for i in range(2)]
            if attempt == 0:
                traj = run_episode("breakthrough", ep_seed, policies)
            else:
                # деterministic pairs replay the same game; diversify later
                # attempts with two seeded random opening plies
                traj = _episode_with_random_opening(
                    "breakthrough", ep_seed, policies, opening_plies=2
                )
            pool.extend(
                _candidates_from_trajectory(traj, setting, ep_seed, turn_based=True)
            )
            attempt += 1
        take = _stratified_sample(pool, setting.count, rng)
        chosen.extend(take)
        composition[setting.label] = len(take)
    return chosen, {"composition": composition}


def _episode_with_random_opening(env_name, seed, policies, opening_plies=2):
    """Random opening plies, then the given policies; recorded as one episode."""
    from ..agents import RandomPolicy
    from ..core.types import Trajectory, TrajectoryStep

    env = make(env_name, seed)
    opener = RandomPolicy()
    rngs = [split_rng(seed, f"opening/{i}") for i in range(2)]
    traj = Trajectory(spec=env.spec, seed=seed)
    t = 0
    while not env.terminal:
        movers = env.current_players()
        actions = []
        for agent in range(env.spec.num_agents):
            if agent not in movers:
                actions.append(NOOP)
                continue
            legal = env.legal_actions(agent)
            policy = opener if t < opening_plies else policies[agent]
            actions.append(policy.act(env, agent, legal, rngs[agent]))
        result = env.step(tuple(actions))
        traj.steps.append(
            TrajectoryStep(
                actions=tuple(actions),
                rewards=result.rewards,
                events=result.events,
            )
        )
        t += 1
    traj.terminal = env.terminal
    return traj


def _hanabi_pool(recipe: DatasetRecipe, seed: int):
    pools: dict[str, list[Candidate]] = {}
    for s_index, setting in enumerate(recipe.settings):
        pool: list[Candidate] = []
        for episode in range(recipe.episodes_per_setting):
            ep_seed = split_rng(seed, f"hanabi/{s_index}/{episode}").getrandbits(48)
            policies = [_policy(setting.seats[i], i) for i in range(2)]
            traj = run_episode("hanabi", ep_seed, policies)
            for cand in _candidates_from_trajectory(
                traj, setting, ep_seed, turn_based=True
            ):
                cand.tag = cand.ground_truth.split()[0]  # PLAY/DISCARD/REVEAL
                pool.append(cand)
        pools[setting.label] = pool

    ratio = recipe.hanabi_type_ratio
    kinds = ("PLAY", "DISCARD", "REVEAL")
    if not recipe.include_reveals:
        ratio = (ratio[0], ratio[1], 0)
    total_ratio = sum(ratio)
    quotas = {
        kind: round(recipe.total * weight / total_ratio)
        for kind, weight in zip(kinds, ratio)
    }
    # rounding drift lands on the largest bucket
    drift = recipe.total - sum(quotas.values())
    quotas[max(quotas, key=lambda k: quotas[k])] += drift

    strong_label = recipe.settings[0].label
    weak_label = recipe.settings[1].label
    weak_total = recipe.settings[1].count
    # the weak pair pins observer 0 (the weaker seat predicts the stronger),
    # so its quota is spread over kinds and charged to the observer-0 cells
    weak_quota = {
        kind: round(weak_total * weight / total_ratio)
        for kind, weight in zip(kinds, ratio)
    }
    weak_quota[max(weak_quota, key=lambda k: weak_quota[k])] += weak_total - sum(
        weak_quota.values()
    )

    rng = split_rng(seed, "sample/hanabi")
    chosen: list[Candidate] = []
    type_counts: dict[str, int] = {}
    observer_counts = {0: 0, 1: 0}
    for k_index, kind in enumerate(kinds):
        quota = quotas[kind]
        if quota == 0:
            continue
        # odd quotas alternate their extra sample between the observers so
        # the agent order stays exactly 50/50 overall
        extra_to = k_index % 2
        cells = {extra_to: quota - quota // 2, 1 - extra_to: quota // 2}
        for observer in (0, 1):
            cell = cells[observer]
            weak_want = min(weak_quota[kind], cell) if observer == 0 else 0
            weak_cands = [
                c for c in pools[weak_label]
                if c.tag == kind and c.observer == observer
            ]
            strong_cands = [
                c for c in pools[strong_label]
                if c.tag == kind and c.observer == observer
            ]
            if len(weak_cands) < weak_want:  # borrow from the strong pool
                weak_want = len(weak_cands)
            strong_want = cell - weak_want
            take = []
            if weak_want:
                take.extend(_stratified_sample(weak_cands, weak_want, rng))
            take.extend(_stratified_sample(strong_cands, strong_want, rng))
            chosen.extend(take)
            type_counts[kind] = type_counts.get(kind, 0) + len(take)
            observer_counts[observer] += len(take)
    composition = {
        strong_label: sum(1 for c in chosen if c.pair == strong_label),
        weak_label: sum(1 for c in chosen if c.pair == weak_label),
    }
    return chosen, {
        "composition": composition,
        "type_counts": type_counts,
        "observer_counts": observer_counts,
        "include_reveals": recipe.include_reveals,
    }


def _overcooked_pool(recipe: DatasetRecipe, seed: int):
    pool: list[Candidate] = []
    for s_index, setting in enumerate(recipe.settings):
        episodes = recipe.episodes_per_setting if s_index else 1  # oracle is deterministic
        for episode in range(episodes):
            ep_seed = split_rng(seed, f"oc/{s_index}/{episode}").getrandbits(48)
            policies = [_policy(setting.seats[i], i) for i in range(2)]
            traj = run_episode("overcooked", ep_seed, policies)
            valid_flags = _overcooked_valid_steps("overcooked", ep_seed, traj)
            for cand in _candidates_from_trajectory(
                traj, setting, ep_seed, turn_based=False
            ):
                cand.tag = "valid" if valid_flags[cand.step][cand.predicted] else "invalid"
                if cand.ground_truth == "STAY":
                    cand.tag = "stay"
                if cand.tag != "invalid":
                    pool.append(cand)
    rng = split_rng(seed, "sample/overcooked")
    per_chef = recipe.total // 2
    stay_cap = int(recipe.total * recipe.stay_cap) // 2
    chosen: list[Candidate] = []
    stay_count = 0
    for observer in (0, 1):
        # observer i predicts chef 1-i; chef balance is over the predicted chef
        moves = [c for c in pool if c.observer == observer and c.tag == "valid"]
        stays = [c for c in pool if c.observer == observer and c.tag == "stay"]
        stay_take = min(stay_cap, len(stays))
        move_take = per_chef - stay_take
        if len(moves) < move_take:
            raise InfeasibleRecipeError(
                f"only {len(moves)} valid non-STAY candidates for observer {observer}"
            )
        chosen.extend(_stratified_sample(stays, stay_take, rng))
        chosen.extend(_stratified_sample(moves, move_take, rng))
        stay_count += stay_take
    composition = {}
    for cand in chosen:
        composition[cand.pair] = composition.get(cand.pair, 0) + 1
    return chosen, {
        "composition": composition,
        "stay_fraction": stay_count / recipe.total,
        "chef_counts": {
            "0": sum(1 for c in chosen if c.predicted == 0),
            "1": sum(1 for c in chosen if c.predicted == 1),
        },
    }


def _overcooked_valid_steps(env_name: str, seed: int, traj):
    """Per step, per chef: did the chef's submitted action have any effect?

    Blocked bumps that do not even rotate the chef and no-op INTERACTs are
    invalid; STAY is handled separately by the STAY cap.
    """
    env = make(env_name, seed)
    flags = []
    for joint in traj.actions:
        before = [(c.pos, c.orientation, c.held) for c in env.chefs]
        pot_before = env.pot
        env.step(joint)
        after = [(c.pos, c.orientation, c.held) for c in env.chefs]
        step_flags = []
        for i in range(2):
            changed = before[i] != after[i] or env.pot != pot_before
            step_flags.append(changed)
        flags.append(step_flags)
    return flags


def _pong_pool(recipe: DatasetRecipe, seed: int):
    pool: list[Candidate] = []
    for s_index, setting in enumerate(recipe.settings):
        for episode in range(recipe.episodes_per_setting):
            ep_seed = split_rng(seed, f"pong/{s_index}/{episode}").getrandbits(48)
            policies = [_policy(setting.seats[i], i) for i in range(2)]
            traj = run_episode("pong", ep_seed, policies, max_steps=600)
            pool.extend(
                _candidates_from_trajectory(traj, setting, ep_seed, turn_based=False)
            )
    rng = split_rng(seed, "sample/pong")
    chosen = _stratified_sample(pool, recipe.total, rng)
    composition = {}
    for cand in chosen:
        composition[cand.pair] = composition.get(cand.pair, 0) + 1
    return chosen, {"composition": composition}


# -- entry point ----------------------------------------------------------------


def generate_dataset(
    env_name: str,
    seed: int = 0,
    recipe: DatasetRecipe | None = None,
    render_frames: bool = True,
) -> tuple[list[ReasoningSample], dict]:
    """Build the 400-sample offline dataset for one environment."""
    recipe = recipe or default_recipe(env_name)
    if recipe.env != env_name:
        raise ValueError(f"recipe is for {recipe.env!r}, not {env_name!r}")
    if env_name in ("coin", "hunt", "battle"):
        chosen, stats = _grid_pool(env_name, recipe, seed)
    elif env_name == "kuhn":
        chosen, stats = _kuhn_pool(recipe, seed)
    elif env_name == "breakthrough":
        chosen, stats = _breakthrough_pool(recipe, seed)
    elif env_name == "hanabi":
        chosen, stats = _hanabi_pool(recipe, seed)
    elif env_name == "overcooked":
        chosen, stats = _overcooked_pool(recipe, seed)
    elif env_name == "pong":
        chosen, stats = _pong_pool(recipe, seed)
    else:
        raise ValueError(f"no dataset generator for {env_name!r}")
    if len(chosen) != recipe.total:
        raise InfeasibleRecipeError(
            f"sampled {len(chosen)} candidates, wanted {recipe.total}"
        )
    order_rng = split_rng(seed, "order")
    order_rng.shuffle(chosen)
    samples = []
    for index, cand in enumerate(chosen):
        env = replay_to_step(env_name, cand.seed, cand.actions, cand.step)
        obs = env.observe(cand.observer, include_frames=render_frames)
        samples.append(
            ReasoningSample(
                env=env_name,
                index=index,
                observer=cand.observer,
                predicted=cand.predicted,
                step=cand.step,
                seed=cand.seed,
                pair=cand.pair,
                text=obs.text,
                frames=list(obs.frames),
                ground_truth=cand.ground_truth,
                equivalence=equivalence_set(env, cand.predicted, cand.ground_truth),
                legal=env.legal_actions(cand.predicted),
            )
        )
    manifest = {
        "env": env_name,
        "seed": seed,
        "total": recipe.total,
        "deviations": list(recipe.deviations),
        **stats,
    }
    return samples, manifest
