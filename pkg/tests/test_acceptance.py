"""Acceptance suite: the eight release criteria, each at its stated tolerance.

Every criterion prints one [PASS] line (visible with ``pytest -s`` or in the
captured output); a failing assertion marks the criterion red.  Budgets:
criterion 2 <= 15 min, criterion 5 <= 5 min, the full verify gate in
criterion 8 <= 20 min; everything else runs in seconds.
"""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from vsarena.agents import (
    KuhnNEPolicy,
    MCTSPolicy,
    MinimaxPolicy,
    RandomPolicy,
    best_response_gain,
    ne_profile,
    seat0_value,
)
from vsarena.agents.scripted import oracle_chef_pair, premature_cook_pair
from vsarena.core import make, registered_envs, replay, run_episode, verify_reward_structure
from vsarena.core.runner import event_counts
from vsarena.core.types import split_rng
from vsarena.dataset import generate_dataset, random_predictor, score_predictions
from vsarena.games.hanabi import hanabi_returns
from vsarena.harness import normalize


def _report(criterion: str, detail: str) -> None:
    print(f"[PASS] {criterion}: {detail}")


def test_criterion_1_kuhn_equilibrium_oracle():
    """Exact NE value -1/18 and zero best-response gain across the family."""
    start = time.time()
    target = Fraction(-1, 18)
    for alpha in (0, Fraction(1, 6), Fraction(1, 3)):
        profile = ne_profile(alpha)
        value = seat0_value(profile, profile)
        assert abs(value - target) < 1e-12
        assert best_response_gain(profile, 0) <= 1e-12
        assert best_response_gain(profile, 1) <= 1e-12
    # Table-5 cross-check: the 60/60 seat split puts the NE at raw 0.0
    assert float(target) / 2 + float(-target) / 2 == 0.0
    elapsed = time.time() - start
    assert elapsed < 1.0, f"oracle took {elapsed:.2f}s, budget 1s"
    _report(
        "criterion 1 (Kuhn equilibrium oracle)",
        f"value -1/18 exact, gains 0 for alpha in {{0, 1/6, 1/3}}, {elapsed:.2f}s",
    )


def test_criterion_2_breakthrough_search_hierarchy():
    """minimax(5) beats MCTS >= 19/20; random loses 20/20 to the same MCTS."""
    start = time.time()

    def play_match(black_policy, white_policy, seed):
        return run_episode("breakthrough", seed, [black_policy, white_policy])

    minimax_wins = 0
    seeds = split_rng(2024, "acceptance/bt")
    for game in range(20):
        seed = seeds.getrandbits(32)
        mcts = MCTSPolicy(exploration=2.0, simulations=100, rollouts=10)
        minimax = MinimaxPolicy(depth=5)
        if game < 10:  # first seat (Black) for ten games, then second seat
            traj = play_match(minimax, mcts, seed)
            minimax_wins += traj.returns[0] > 0
        else:
            traj = play_match(mcts, minimax, seed)
            minimax_wins += traj.returns[1] > 0
    assert minimax_wins >= 19, f"minimax won only {minimax_wins}/20"

    random_losses = 0
    for game in range(20):
        seed = seeds.getrandbits(32)
        mcts = MCTSPolicy(exploration=2.0, simulations=100, rollouts=10)
        if game < 10:
            traj = play_match(RandomPolicy(), mcts, seed)
            random_losses += traj.returns[0] < 0
        else:
            traj = play_match(mcts, RandomPolicy(), seed)
            random_losses += traj.returns[1] < 0
    assert random_losses == 20, f"random lost only {random_losses}/20"
    elapsed = time.time() - start
    assert elapsed <= 900
    _report(
        "criterion 2 (Breakthrough search hierarchy)",
        f"minimax(5) {minimax_wins}/20 vs MCTS, random 0/20, {elapsed:.0f}s",
    )


def test_criterion_3_normalization_cross_checks():
    """Published-table normalization identities."""
    hanabi = normalize(13.6, 0.0, 24.0)
    assert hanabi == pytest.approx(56.7, abs=0.05)
    overcooked = normalize(7.0, 0.2, 40.0)
    assert overcooked == pytest.approx(17.0, abs=0.1)
    assert normalize(0.0, 0.0, 24.0) == 0.0
    assert normalize(24.0, 0.0, 24.0) == 100.0
    _report(
        "criterion 3 (normalization cross-checks)",
        f"normalize(13.6)={hanabi:.2f}, normalize(7.0)={overcooked:.2f}",
    )


def test_criterion_4_overcooked_oracle():
    start = time.time()
    traj = run_episode("overcooked", 0, list(oracle_chef_pair()))
    assert traj.returns == (40.0, 40.0)
    assert len(traj.events("soup-delivered")) == 2
    assert len(traj.steps) == 50

    premature = run_episode("overcooked", 0, list(premature_cook_pair()))
    counts = event_counts(premature)
    assert counts.get("onion-added") == 2
    assert "soup-delivered" not in counts  # no delivery reward for 2-onion soup
    elapsed = time.time() - start
    assert elapsed < 1.0
    _report(
        "criterion 4 (Overcooked oracle)",
        f"2 deliveries raw 40.0; premature 2-onion cook earns 0 delivery, {elapsed:.2f}s",
    )


def test_criterion_5_reward_structure_law():
    """1,000 random-policy episodes per environment respect the class law."""
    start = time.time()
    witnesses = {}
    for name in registered_envs():
        report = verify_reward_structure(name, 1000, seed=7)
        assert report.ok, f"{name}: {report.violations[:1]}"
        if report.interaction_class == "mixed":
            witnesses[name] = report.witness
    assert set(witnesses) == {"battle", "coin", "hunt"}
    assert all(witnesses.values())
    elapsed = time.time() - start
    assert elapsed <= 300
    _report(
        "criterion 5 (reward-structure law)",
        f"10 envs x 1000 episodes, witnesses for all mixed envs, {elapsed:.0f}s",
    )


def test_criterion_6_hanabi_conservation_and_scoring():
    from vsarena.verify import verify_hanabi_conservation

    start = time.time()
    failures = verify_hanabi_conservation(1000, seed=3)
    assert failures == []

    # full-completion trace scores exactly 25
    env = make("hanabi", 0)
    env.deck = []
    env.hands = [
        [("R", 1), ("R", 2), ("R", 3), ("R", 4), ("R", 5)],
        [("Y", 1), ("Y", 2), ("Y", 3), ("Y", 4), ("Y", 5)],
    ]
    from vsarena.games.hanabi import Slot

    env.knowledge = [[Slot(env.config) for _ in range(5)] for _ in range(2)]
    env.fireworks = {"R": 0, "Y": 0, "G": 5, "W": 5, "B": 5}
    for _ in range(10):
        joint = ["NOOP", "NOOP"]
        joint[env.to_move] = "PLAY 0"
        env.step(tuple(joint))
    assert env.terminal and env.score() == 25

    # a lives-exhausted trace with progress: standard 0, firework > 0
    rng = split_rng(1, "loss-hunt")
    for _ in range(300):
        seed = rng.getrandbits(32)
        traj = run_episode("hanabi", seed, [RandomPolicy(), RandomPolicy()])
        if len(traj.events("misplay")) >= 3 and traj.returns[0] > 0:
            standard, firework = hanabi_returns(traj)
            assert standard == 0.0
            assert firework > 0
            break
    else:
        raise AssertionError("no lives-exhausted trace with progress found")
    elapsed = time.time() - start
    _report(
        "criterion 6 (Hanabi conservation & scoring)",
        f"1000 episodes conserved, completion=25, zero-out verified, {elapsed:.0f}s",
    )


def test_criterion_7_dataset_recipes():
    from vsarena.verify import verify_equivalence

    start = time.time()
    compositions = {
        "coin": {
            "common-welfare+common-welfare": 100,
            "self-interest+self-interest": 100,
            "common-welfare+self-interest": 50,
            "self-interest+common-welfare": 50,
            "random+self-interest": 50,
            "self-interest+random": 50,
        },
        "hunt": {
            "toward-monster+toward-monster": 80,
            "camp-center+camp-center": 80,
            "camp-corner+camp-corner": 80,
            "self-interest+self-interest": 80,
            "random+self-interest": 40,
            "self-interest+random": 40,
        },
        "battle": {
            "common-welfare+common-welfare": 100,
            "self-interest+self-interest": 100,
            "common-welfare+self-interest": 50,
            "self-interest+common-welfare": 50,
            "biased-red+biased-red": 50,
            "biased-blue+biased-blue": 50,
        },
    }
    for env_name, expected in compositions.items():
        _, manifest = generate_dataset(env_name, seed=5, render_frames=False)
        assert manifest["composition"] == expected, env_name

    _, kuhn_manifest = generate_dataset("kuhn", seed=5, render_frames=False)
    assert len(kuhn_manifest["composition"]) == 9
    assert all(v == 600 for v in kuhn_manifest["games_simulated"].values())

    _, bt_manifest = generate_dataset("breakthrough", seed=5, render_frames=False)
    assert bt_manifest["composition"] == {
        "minimax(3,4)": 67, "minimax(3,5)": 67, "minimax(4,5)": 67,
        "minimax(4,6)": 67, "minimax(4,4)": 66, "minimax(5,5)": 66,
    }

    _, hanabi_manifest = generate_dataset("hanabi", seed=5, render_frames=False)
    counts = hanabi_manifest["type_counts"]
    assert abs(counts["PLAY"] - 400 * 2 / 9) <= 1
    assert abs(counts["DISCARD"] - 400 * 3 / 9) <= 1
    assert abs(counts["REVEAL"] - 400 * 4 / 9) <= 1

    assert verify_equivalence(states=1000, seed=1) == []

    rng = split_rng(11, "acceptance/predict")
    accuracies = {}
    for env_name, published in (("overcooked", 16.7), ("kuhn", 50.0), ("pong", 33.3)):
        samples, _ = generate_dataset(env_name, seed=7, render_frames=False)
        total = sum(
            score_predictions(samples, random_predictor(samples, rng))
            for _ in range(25)
        )
        accuracy = total / 25
        assert abs(accuracy - published) <= 3.0, (env_name, accuracy)
        accuracies[env_name] = round(accuracy, 1)
    elapsed = time.time() - start
    _report(
        "criterion 7 (dataset recipes)",
        f"compositions exact, equivalence 1000/1000, random accuracies "
        f"{accuracies}, {elapsed:.0f}s",
    )


def test_criterion_8_determinism_and_verify_gate():
    from vsarena.verify import run_verification

    start = time.time()
    for name in registered_envs():
        seed = split_rng(0, f"acceptance/det/{name}").getrandbits(48)
        first = run_episode(name, seed, [RandomPolicy(), RandomPolicy()], max_steps=150)
        replayed = replay(name, seed, first.actions)
        assert len(first.steps) == len(replayed.steps)
        for a, b in zip(first.steps, replayed.steps):
            assert a.actions == b.actions
            assert a.rewards == b.rewards
            assert a.events == b.events
        env_a = make(name, seed)
        env_b = make(name, seed)
        assert env_a.observe(0).frames == env_b.observe(0).frames  # byte-identical
    failures = run_verification(probes=100, seed=0)
    assert failures == []
    elapsed = time.time() - start
    assert elapsed <= 1200
    _report(
        "criterion 8 (determinism & verify gate)",
        f"replays byte-identical for {len(registered_envs())} envs, "
        f"verify suite green, {elapsed:.0f}s",
    )
