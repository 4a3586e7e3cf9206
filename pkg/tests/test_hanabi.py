"""Hanabi: deck composition, conservation, knowledge, scoring, termination."""

from __future__ import annotations

from collections import Counter

import pytest

from vsarena.agents import RandomPolicy
from vsarena.core import NOOP, IllegalActionError, make, run_episode
from vsarena.games.hanabi import FULL_CONFIG, TINY_CONFIG, hanabi_returns


def test_full_deck_composition():
    deck = FULL_CONFIG.full_deck()
    assert len(deck) == 50
    per_color = Counter(card[0] for card in deck)
    assert all(count == 10 for count in per_color.values())
    for color in FULL_CONFIG.colors:
        ranks = Counter(rank for c, rank in deck if c == color)
        assert ranks == {1: 3, 2: 2, 3: 2, 4: 2, 5: 1}


def test_tiny_deck_composition():
    deck = TINY_CONFIG.full_deck()
    assert len(deck) == 12
    assert TINY_CONFIG.max_score == 6
    for color in TINY_CONFIG.colors:
        ranks = Counter(rank for c, rank in deck if c == color)
        assert ranks == {1: 3, 2: 2, 3: 1}


def _mover_step(env, token):
    joint = [NOOP, NOOP]
    joint[env.to_move] = token
    return env.step(tuple(joint))


def _conserved(env) -> bool:
    held = Counter(env.deck)
    for hand in env.hands:
        held.update(hand)
    held.update(env.discard_pile)
    for color, top in env.fireworks.items():
        for rank in range(1, top + 1):
            held[(color, rank)] += 1
    return held == Counter(env.config.full_deck())


def test_card_conservation_over_random_play():
    from vsarena.core.types import split_rng

    rng = split_rng(0, "hanabi-test")
    for seed in range(30):
        env = make("hanabi", seed)
        shared = 0.0
        while not env.terminal:
            legal = env.legal_actions(env.to_move)
            result = _mover_step(env, legal[rng.randrange(len(legal))])
            shared += result.rewards[0]
            assert _conserved(env)
            assert shared == env.firework_sum()


def test_successful_play_extends_firework_and_pays_one():
    for seed in range(200):
        env = make("hanabi", seed)
        mover = env.to_move
        hand = env.hands[mover]
        playable = [i for i, (c, r) in enumerate(hand) if r == 1]
        if not playable:
            continue
        color = hand[playable[0]][0]
        result = _mover_step(env, f"PLAY {playable[0]}")
        assert env.fireworks[color] == 1
        assert result.rewards == (1.0, 1.0)
        assert any(ev.kind == "firework-play" for ev in result.events)
        return
    raise AssertionError("no seed had a rank-1 card in the opening hand")


def test_misplay_burns_life_and_discards():
    for seed in range(200):
        env = make("hanabi", seed)
        mover = env.to_move
        hand = env.hands[mover]
        bad = [i for i, (c, r) in enumerate(hand) if r != 1]
        if not bad:
            continue
        card = hand[bad[0]]
        result = _mover_step(env, f"PLAY {bad[0]}")
        assert env.life_tokens == 2
        assert card in env.discard_pile
        assert result.rewards == (0.0, 0.0)
        assert any(ev.kind == "misplay" for ev in result.events)
        return
    raise AssertionError("no seed had a misplayable opening card")


def test_discard_restores_info_token_capped():
    env = make("hanabi", 1)
    assert env.info_tokens == 8
    _mover_step(env, "DISCARD 0")  # at cap: stays 8
    assert env.info_tokens == 8
    # spend one, then discard restores it
    other = env.hands[1 - env.to_move]
    token = f"REVEAL RANK {other[0][1]}"
    _mover_step(env, token)
    assert env.info_tokens == 7
    _mover_step(env, "DISCARD 0")
    assert env.info_tokens == 8


def test_reveal_narrows_knowledge_and_keeps_truth():
    env = make("hanabi", 2)
    mover = env.to_move
    target = 1 - mover
    color = env.hands[target][0][0]
    _mover_step(env, f"REVEAL COLOR {color}")
    for card, slot in zip(env.hands[target], env.knowledge[target]):
        assert card[0] in slot.colors
        assert card[1] in slot.ranks
        if card[0] == color:
            assert slot.colors == {color}
        else:
            assert color not in slot.colors


def test_reveal_requires_info_token_and_match():
    env = make("hanabi", 3)
    env.info_tokens = 0
    legal = env.legal_actions(env.to_move)
    assert not any(a.startswith("REVEAL") for a in legal)
    env.info_tokens = 8
    other_colors = {c for c, _ in env.hands[1 - env.to_move]}
    missing = [c for c in env.config.colors if c not in other_colors]
    if missing:  # empty hints are illegal
        with pytest.raises(IllegalActionError):
            _mover_step(env, f"REVEAL COLOR {missing[0]}")


def test_knowledge_only_shrinks_over_episode():
    from vsarena.core.types import split_rng

    rng = split_rng(5, "shrink")
    env = make("hanabi", 7)
    while not env.terminal and env.steps_taken < 40:
        before = {
            (p, id(slot)): (len(slot.colors), len(slot.ranks))
            for p in range(2)
            for slot in env.knowledge[p]
        }
        legal = env.legal_actions(env.to_move)
        _mover_step(env, legal[rng.randrange(len(legal))])
        for p in range(2):
            for slot in env.knowledge[p]:
                key = (p, id(slot))
                if key in before:
                    assert len(slot.colors) <= before[key][0]
                    assert len(slot.ranks) <= before[key][1]


def test_lives_exhausted_scores_zero_but_firework_counts():
    from vsarena.core.types import split_rng

    rng = split_rng(1, "loss-hunt")
    for attempt in range(200):
        seed = rng.getrandbits(32)
        traj = run_episode("hanabi", seed, [RandomPolicy(), RandomPolicy()])
        misplays = len(traj.events("misplay"))
        if misplays >= 3 and traj.returns[0] > 0:
            standard, firework = hanabi_returns(traj)
            assert standard == 0.0
            assert firework == traj.returns[0] > 0
            return
    raise AssertionError("no lives-exhausted episode with progress found")


def test_full_completion_scores_25():
    env = make("hanabi", 0)
    # stack the deck so each color plays out 1..5 in order
    env.deck = []
    env.hands = [
        [("R", 1), ("R", 2), ("R", 3), ("R", 4), ("R", 5)],
        [("Y", 1), ("Y", 2), ("Y", 3), ("Y", 4), ("Y", 5)],
    ]
    from vsarena.games.hanabi import Slot

    env.knowledge = [
        [Slot(env.config) for _ in range(5)],
        [Slot(env.config) for _ in range(5)],
    ]
    env.fireworks = {"R": 0, "Y": 0, "G": 5, "W": 5, "B": 5}
    env.final_countdown = None
    total = 0.0
    result = None
    for _ in range(10):
        result = _mover_step(env, "PLAY 0")
        total += result.rewards[0]
    assert env.terminal
    assert env.outcome == "completed"
    assert env.score() == 25
    assert total == 10.0  # the ten plays made here


def test_deck_exhaustion_allows_one_final_round():
    env = make("tiny-hanabi", 4)
    from vsarena.core.types import split_rng

    rng = split_rng(4, "final-round")
    moves_after_empty = 0
    deck_emptied = False
    while not env.terminal:
        legal = [a for a in env.legal_actions(env.to_move) if a.startswith("DISCARD")]
        if not legal:
            legal = env.legal_actions(env.to_move)
        was_empty = not env.deck
        _mover_step(env, legal[rng.randrange(len(legal))])
        if deck_emptied and was_empty:
            moves_after_empty += 1
        if not env.deck and not deck_emptied:
            deck_emptied = True
    if env.outcome == "deck-exhausted":
        assert moves_after_empty == 2  # one final turn per player


def test_privacy_own_hand_never_in_text():
    env = make("hanabi", 8)
    text = env.observe(0, include_frames=False).text
    own = env.hands[0]
    other = env.hands[1]
    # the other player's card faces appear; our own must not
    for card in other:
        assert f"{card[0]}{card[1]}" in text
    own_section = text.split("Your hand")[1].split(f"Player 1 hand")[0]
    for card in own:
        assert f"{card[0]}{card[1]}" not in own_section


def test_tiny_variant_conserves_smaller_deck():
    from vsarena.core.types import split_rng

    rng = split_rng(0, "tiny")
    for seed in range(20):
        env = make("tiny-hanabi", seed)
        while not env.terminal:
            legal = env.legal_actions(env.to_move)
            _mover_step(env, legal[rng.randrange(len(legal))])
            assert _conserved(env)
