"""The one-parameter Kuhn poker Nash equilibrium family.

The family is indexed by alpha in [0, 1/3], the opening bet probability with
a Jack.  The remaining behavioral probabilities are the classical equilibrium
values; they are not taken on faith — ``best_response_gain`` recomputes, with
exact Fraction arithmetic over all six deals, how much either seat could gain
by deviating to its best pure strategy, and the test suite requires that gain
to be zero for the whole family.  Seat 0's equilibrium value is exactly
-1/18 per game.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from ..games.kuhn import BET, CARDS, PASS, settle
from .base import Policy

ONE_THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class KuhnNEProfile:
    """Bet/call probabilities for both seats, keyed by private card.

    open_bet:    seat 0 opening bet.
    call_after_check_bet: seat 0 calling after its check was raised.
    bet_after_check: seat 1 betting once seat 0 checked.
    call_facing_bet: seat 1 calling seat 0's opening bet.
    """

    alpha: Fraction
    open_bet: dict[str, Fraction]
    call_after_check_bet: dict[str, Fraction]
    bet_after_check: dict[str, Fraction]
    call_facing_bet: dict[str, Fraction]

    def bet_probability(self, seat: int, card: str, history: str) -> Fraction:
        """P(BET) at the (seat, card, public history) information set."""
        if seat == 0 and history == "":
            return self.open_bet[card]
        if seat == 0 and history == "PB":
            return self.call_after_check_bet[card]
        if seat == 1 and history == "P":
            return self.bet_after_check[card]
        if seat == 1 and history == "B":
            return self.call_facing_bet[card]
        raise ValueError(f"no decision for seat {seat} at history {history!r}")


def ne_profile(alpha) -> KuhnNEProfile:
    alpha = Fraction(alpha)
    if not 0 <= alpha <= ONE_THIRD:
        raise ValueError("alpha must lie in [0, 1/3]")
    return KuhnNEProfile(
        alpha=alpha,
        open_bet={"J": alpha, "Q": Fraction(0), "K": 3 * alpha},
        call_after_check_bet={
            "J": Fraction(0),
            "Q": alpha + ONE_THIRD,
            "K": Fraction(1),
        },
        bet_after_check={"J": ONE_THIRD, "Q": Fraction(0), "K": Fraction(1)},
        call_facing_bet={"J": Fraction(0), "Q": ONE_THIRD, "K": Fraction(1)},
    )


#: decision histories and their acting seat, in play order
_DECISIONS = {"": 0, "P": 1, "B": 1, "PB": 0}


def _walk(history: str, deal, prob: Fraction, bet_prob_fn) -> Fraction:
    """Expected seat-0 net chips below ``history``; probabilities are exact."""
    payoff = settle(history, deal)
    if payoff is not None:
        return prob * int(payoff[0])  # net chips are exact integers
    seat = _DECISIONS[history]
    p_bet = bet_prob_fn(seat, deal[seat], history)
    total = Fraction(0)
    if p_bet > 0:
        total += _walk(history + "B", deal, prob * p_bet, bet_prob_fn)
    if p_bet < 1:
        total += _walk(history + "P", deal, prob * (1 - p_bet), bet_prob_fn)
    return total


def seat0_value(profile0: KuhnNEProfile, profile1: KuhnNEProfile) -> Fraction:
    """Exact expected net chips of seat 0 when seat i plays profile i."""

    def bet_prob(seat: int, card: str, history: str) -> Fraction:
        prof = profile0 if seat == 0 else profile1
        return prof.bet_probability(seat, card, history)

    total = Fraction(0)
    for deal in permutations(CARDS, 2):
        total += _walk("", deal, Fraction(1, 6), bet_prob)
    return total


def _pure_strategies() -> list[dict[str, tuple[int, int]]]:
    """All per-card pure strategies for one seat: (first decision, second)."""
    options = list(product((0, 1), repeat=2))
    return [
        {"J": sj, "Q": sq, "K": sk}
        for sj in options
        for sq in options
        for sk in options
    ]


def best_response_gain(profile: KuhnNEProfile, seat: int) -> Fraction:
    """Best pure-strategy improvement available to ``seat``; 0 at equilibrium.

    Enumerates every pure strategy (two binary decisions per card) for the
    deviating seat while the other seat plays the profile.
    """
    base = seat0_value(profile, profile)
    base = base if seat == 0 else -base
    best = base
    for pure in _pure_strategies():

        def bet_prob(s: int, card: str, history: str) -> Fraction:
            if s != seat:
                return profile.bet_probability(s, card, history)
            first = history in ("", "P")  # each seat's first vs second decision
            return Fraction(pure[card][0 if first else 1])

        value = Fraction(0)
        for deal in permutations(CARDS, 2):
            value += _walk("", deal, Fraction(1, 6), bet_prob)
        value = value if seat == 0 else -value
        if value > best:
            best = value
    return best - base


class KuhnNEPolicy(Policy):
    """Samples the equilibrium's behavioral strategy for either seat."""

    name = "ne"

    def __init__(self, alpha=0):
        self.profile = ne_profile(alpha)

    def act(self, env, agent, legal, rng):
        card = env.deal[agent]
        history = env.history
        p_bet = float(self.profile.bet_probability(agent, card, history))
        return BET if rng.random() < p_bet else PASS
