"""Rendering: byte determinism, information parity (text round-trips), and
privacy (no hidden information in either modality)."""

from __future__ import annotations

import re

import pytest

from vsarena.agents import RandomPolicy
from vsarena.core import make, run_episode
from vsarena.core.runner import replay_to_step
from vsarena.render import render_image

ALL_ENVS = (
    "battle", "breakthrough", "coin", "hanabi", "hunt",
    "kuhn", "overcooked", "pong", "tictactoe", "tiny-hanabi",
)


@pytest.mark.parametrize("name", ALL_ENVS)
def test_identical_state_identical_png_bytes(name):
    env1 = make(name, 12)
    env2 = make(name, 12)
    assert render_image(env1, 0) == render_image(env2, 0)
    traj = run_episode(name, 12, [RandomPolicy(), RandomPolicy()], max_steps=6)
    a = replay_to_step(name, 12, traj.actions, len(traj.steps))
    b = replay_to_step(name, 12, traj.actions, len(traj.steps))
    assert render_image(a, 0) == render_image(b, 0)
    assert render_image(a, 1) == render_image(b, 1)


def test_png_magic_bytes():
    env = make("coin", 0)
    data = render_image(env, 0)
    assert data[:8] == b"\x89PNG\r\n\x1a\n"


# -- privacy -----------------------------------------------------------------


def test_hanabi_own_cards_invisible_in_both_modalities():
    """Swapping two of my own (equally unknown) cards must not change what I
    see; swapping the cards the OTHER player holds must."""
    env = make("hanabi", 6)
    base_img = render_image(env, 0)
    base_text = env.observe(0, include_frames=False).text
    env.hands[0][0], env.hands[0][1] = env.hands[0][1], env.hands[0][0]
    assert render_image(env, 0) == base_img
    assert env.observe(0, include_frames=False).text == base_text
    # the other player's hand is visible: swapping changes my view
    if env.hands[1][0] != env.hands[1][1]:
        env.hands[1][0], env.hands[1][1] = env.hands[1][1], env.hands[1][0]
        assert env.observe(0, include_frames=False).text != base_text


def test_kuhn_opponent_card_invisible():
    def env_with_deal(deal):
        for seed in range(500):
            env = make("kuhn", seed)
            if env.deal == deal:
                return env
        raise AssertionError

    a = env_with_deal(("K", "Q"))
    b = env_with_deal(("K", "J"))
    assert a.observe(0, include_frames=False).text == b.observe(0, include_frames=False).text
    assert render_image(a, 0) == render_image(b, 0)
    assert a.observe(1, include_frames=False).text != b.observe(1, include_frames=False).text


# -- information parity: parse the text back ------------------------------------


def test_kuhn_text_roundtrip():
    env = make("kuhn", 3)
    env.step(("PASS", "NOOP"))
    text = env.observe(1, include_frames=False).text
    card = re.search(r"Your card: (\w)", text).group(1)
    pot = int(re.search(r"Pot: (\d+) chips", text).group(1))
    assert card == env.deal[1]
    assert pot == env.pot_size()
    assert "P0:PASS" in text


def test_breakthrough_text_roundtrip():
    env = make("breakthrough", 0)
    env.step(("b7b6", "NOOP"))
    text = env.observe(0, include_frames=False).text
    whites = set(re.search(r"White pieces: ([^.]+)\.", text).group(1).split(", "))
    blacks = set(re.search(r"Black pieces: ([^.]+)\.", text).group(1).split(", "))
    from vsarena.games.breakthrough import BLACK, WHITE, square_name

    assert whites == {square_name(i) for i in range(64) if env.board[i] == WHITE}
    assert blacks == {square_name(i) for i in range(64) if env.board[i] == BLACK}
    assert "To move: White" in text


def test_grid_text_roundtrip():
    env = make("hunt", 4)
    env.step(("UP", "LEFT"))
    text = env.observe(0, include_frames=False).text
    red = eval(re.search(r"Red player: (\(\d, \d\))", text).group(1))
    blue = eval(re.search(r"Blue player: (\(\d, \d\))", text).group(1))
    monster = eval(re.search(r"Monster: (\(\d, \d\))", text).group(1))
    assert red == env.players[0]
    assert blue == env.players[1]
    assert monster == env.monster
    for label, reward, count in env.counter_rows():
        assert f"{label} ({reward}): {count}" in text


def test_coin_counters_in_text():
    env = make("coin", 4)
    text = env.observe(1, include_frames=False).text
    assert "red collects blue coin (red +1, blue -2): 0" in text
    coins = re.search(r"Red coin: (\(\d, \d\))\. Blue coin: (\(\d, \d\))", text)
    assert eval(coins.group(1)) == env.coins["red"]
    assert eval(coins.group(2)) == env.coins["blue"]


def test_hanabi_text_roundtrip():
    env = make("hanabi", 9)
    env.step((f"REVEAL RANK {env.hands[1][0][1]}", "NOOP"))
    text = env.observe(0, include_frames=False).text
    lives = int(re.search(r"Life tokens: (\d)", text).group(1))
    info = int(re.search(r"Info tokens: (\d)", text).group(1))
    deck = int(re.search(r"Deck size: (\d+)", text).group(1))
    assert lives == env.life_tokens
    assert info == env.info_tokens
    assert deck == len(env.deck)
    fireworks = dict(
        re.findall(r"([RYGWB]): (\d)", text.split("-- Fireworks --")[1].split("--")[0])
    )
    assert {c: int(v) for c, v in fireworks.items()} == env.fireworks
    other_section = text.split("Player 1 hand:")[1]
    for i, (card, slot) in enumerate(zip(env.hands[1], env.knowledge[1])):
        assert f"slot {i}: {card[0]}{card[1]}" in other_section


def test_overcooked_text_roundtrip():
    env = make("overcooked", 0)
    env.step(("LEFT", "DOWN"))
    text = env.observe(0, include_frames=False).text
    for i, chef in enumerate(env.chefs):
        assert f"Chef {i}: position {chef.pos}, facing {chef.orientation}" in text
    assert "Pot: 0 onions, not cooking." in text


def test_pong_text_roundtrip():
    env = make("pong", 2)
    env.step(("UP", "DOWN"))
    text = env.observe(0, include_frames=False).text
    left = float(re.search(r"Left paddle center y: (\d+\.\d)", text).group(1))
    right = float(re.search(r"Right paddle center y: (\d+\.\d)", text).group(1))
    ball = re.search(r"Ball position: \(([\d.-]+), ([\d.-]+)\)", text)
    assert left == pytest.approx(env.paddles[0], abs=0.05)
    assert right == pytest.approx(env.paddles[1], abs=0.05)
    assert float(ball.group(1)) == pytest.approx(env.ball[0], abs=0.05)
    scores = re.search(r"Scores: left (\d), right (\d)", text)
    assert (int(scores.group(1)), int(scores.group(2))) == tuple(env.scores)


def test_tictactoe_text_roundtrip():
    env = make("tictactoe", 0)
    env.step(("4", "NOOP"))
    text = env.observe(1, include_frames=False).text
    grid_lines = text.split("row-major):\n")[1].split("\n")[:3]
    cells = " ".join(grid_lines).split()
    from vsarena.games.tictactoe import MARKS

    for i, cell in enumerate(cells):
        expected = "." if env.board[i] is None else MARKS[env.board[i]]
        assert cell == expected
    assert "To move: O" in text


def test_text_only_observation_has_no_frames():
    env = make("coin", 0)
    obs = env.observe(0, include_frames=False)
    assert obs.frames == ()
    assert obs.text


def test_pong_resolution_is_court_proportional():
    import io

    from PIL import Image

    env = make("pong", 0)
    img = Image.open(io.BytesIO(render_image(env, 0)))
    assert img.size == (320, 384)


def test_default_resolution_512():
    import io

    from PIL import Image

    for name in ("coin", "hanabi", "breakthrough", "kuhn", "overcooked"):
        env = make(name, 0)
        img = Image.open(io.BytesIO(render_image(env, 0)))
        assert img.size == (512, 512)
