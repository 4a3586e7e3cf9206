"""Kuhn poker rules: payouts, terminal histories, observations."""

from __future__ import annotations

import itertools

import pytest

from vsarena.agents import RandomPolicy
from vsarena.core import NOOP, make, run_episode
from vsarena.games.kuhn import CARDS, settle

# Exhaustive payout oracle: all 6 deals x all 5 terminal histories, written
# out by hand from the rules (ante 1, bet 1; fold loses the pot; showdown to
# the higher card).
EXPECTED_NET0 = {
    ("J", "Q"): {"PP": -1, "BP": 1, "BB": -2, "PBP": -1, "PBB": -2},
    ("J", "K"): {"PP": -1, "BP": 1, "BB": -2, "PBP": -1, "PBB": -2},
    ("Q", "J"): {"PP": 1, "BP": 1, "BB": 2, "PBP": -1, "PBB": 2},
    ("Q", "K"): {"PP": -1, "BP": 1, "BB": -2, "PBP": -1, "PBB": -2},
    ("K", "J"): {"PP": 1, "BP": 1, "BB": 2, "PBP": -1, "PBB": 2},
    ("K", "Q"): {"PP": 1, "BP": 1, "BB": 2, "PBP": -1, "PBB": 2},
}


def test_payout_table_exhaustive():
    for deal, table in EXPECTED_NET0.items():
        for history, net0 in table.items():
            rewards = settle(history, deal)
            assert rewards is not None
            assert rewards[0] == net0
            assert rewards[0] + rewards[1] == 0


def test_non_terminal_histories_have_no_payout():
    for history in ("", "P", "B", "PB"):
        assert settle(history, ("K", "Q")) is None


def test_only_five_terminal_histories_reachable():
    reachable = set()

    def walk(history):
        if settle(history, ("K", "Q")) is not None:
            reachable.add(history)
            return
        assert len(history) < 4, f"history {history} should have terminated"
        walk(history + "P")
        walk(history + "B")

    walk("")
    assert reachable == {"PP", "BP", "BB", "PBP", "PBB"}


def _play(env, tokens):
    result = None
    for token in tokens:
        joint = [NOOP, NOOP]
        joint[env.current_players()[0]] = token
        result = env.step(tuple(joint))
    return result


def _env_with_deal(deal):
    for seed in range(500):
        env = make("kuhn", seed)
        if env.deal == deal:
            return env
    raise AssertionError(f"no seed produced deal {deal}")


def test_pass_pass_showdown_higher_card_wins():
    env = _env_with_deal(("K", "Q"))
    result = _play(env, ["PASS", "PASS"])
    assert result.terminal
    assert result.rewards == (1.0, -1.0)


def test_bet_then_pass_bettor_wins():
    env = _env_with_deal(("J", "K"))  # even the Jack wins by betting out a fold
    result = _play(env, ["BET", "PASS"])
    assert result.terminal
    assert result.rewards == (1.0, -1.0)


def test_bet_bet_showdown_pot_four():
    env = _env_with_deal(("Q", "K"))
    result = _play(env, ["BET", "BET"])
    assert result.terminal
    assert result.rewards == (-2.0, 2.0)


def test_episode_length_at_most_three():
    for seed in range(50):
        traj = run_episode("kuhn", seed, [RandomPolicy(), RandomPolicy()])
        assert 2 <= len(traj.steps) <= 3
        assert traj.terminal


def test_observation_shows_own_card_and_pot_only():
    env = _env_with_deal(("K", "Q"))
    text0 = env.observe(0, include_frames=False).text
    text1 = env.observe(1, include_frames=False).text
    assert "Your card: K" in text0
    assert "Your card: Q" in text1
    assert "Pot: 2 chips" in text0
    assert "History: (empty)" in text0
    # the opponent's card appears nowhere in the observation
    assert "Q" not in text0.replace("Your card: K", "")


def test_all_deals_reachable_across_seeds():
    seen = set()
    for seed in range(300):
        seen.add(make("kuhn", seed).deal)
    assert seen == set(itertools.permutations(CARDS, 2))
