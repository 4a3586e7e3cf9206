"""The Kuhn equilibrium family against the exact best-response oracle."""

from __future__ import annotations

from fractions import Fraction

import pytest

from vsarena.agents import KuhnNEPolicy, best_response_gain, ne_profile, seat0_value
from vsarena.core import run_episode
from vsarena.core.types import split_rng

GAME_VALUE = Fraction(-1, 18)


def test_alpha_out_of_range_rejected():
    with pytest.raises(ValueError):
        ne_profile(Fraction(1, 2))
    with pytest.raises(ValueError):
        ne_profile(-1)


def test_alpha_zero_never_opens_with_jack():
    profile = ne_profile(0)
    assert profile.open_bet["J"] == 0
    assert profile.open_bet["K"] == 0  # 3 * alpha


def test_alpha_third_always_bets_king():
    profile = ne_profile(Fraction(1, 3))
    assert profile.open_bet["K"] == 1
    assert profile.open_bet["J"] == Fraction(1, 3)


def test_ne_value_is_minus_one_eighteenth_exactly():
    for alpha in (0, Fraction(1, 6), Fraction(1, 3)):
        profile = ne_profile(alpha)
        assert seat0_value(profile, profile) == GAME_VALUE


@pytest.mark.parametrize("numerator", range(0, 11))
def test_best_response_gain_zero_on_alpha_grid(numerator):
    """No pure deviation profits either seat anywhere on the family."""
    alpha = Fraction(numerator, 30)  # grid over [0, 1/3]
    profile = ne_profile(alpha)
    assert best_response_gain(profile, 0) == 0
    assert best_response_gain(profile, 1) == 0


def test_perturbed_profile_is_exploitable():
    profile = ne_profile(Fraction(1, 6))
    tables = profile.call_facing_bet.copy()
    tables["Q"] = tables["Q"] + Fraction(5, 100)
    perturbed = type(profile)(
        alpha=profile.alpha,
        open_bet=profile.open_bet,
        call_after_check_bet=profile.call_after_check_bet,
        bet_after_check=profile.bet_after_check,
        call_facing_bet=tables,
    )
    assert best_response_gain(perturbed, 0) > Fraction(1, 1000)


def test_policy_tokens_always_legal():
    policy = KuhnNEPolicy(alpha=Fraction(1, 6))
    for seed in range(80):
        traj = run_episode("kuhn", seed, [policy, policy])
        assert traj.terminal


def test_monte_carlo_matches_exact_value():
    """Sampled NE-vs-NE seat-0 mean approaches -1/18 (derived oracle)."""
    policy = KuhnNEPolicy(alpha=0)
    rng = split_rng(0, "mc")
    total = 0.0
    games = 4000
    for _ in range(games):
        traj = run_episode("kuhn", rng.getrandbits(48), [policy, policy])
        total += traj.returns[0]
    assert abs(total / games - float(GAME_VALUE)) < 0.05


def test_seat_balanced_expectation_is_zero():
    """60/60 seat split cancels the seat-0 disadvantage exactly."""
    assert float(GAME_VALUE) / 2 + float(-GAME_VALUE) / 2 == 0.0
