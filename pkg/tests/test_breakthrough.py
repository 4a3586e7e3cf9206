"""Breakthrough rules, the advancement heuristic, and search behavior."""

from __future__ import annotations

import re

import pytest
from hypothesis import given, settings, strategies as st

from vsarena.agents import MinimaxPolicy, RandomPolicy
from vsarena.core import NOOP, IllegalActionError, make, run_episode
from vsarena.games.breakthrough import (
    ADAPTER,
    BLACK,
    EMPTY,
    WHITE,
    advancement,
    evaluate,
    gen_moves,
    initial_board,
    move_token,
    square,
    square_name,
)

MOVE_GRAMMAR = re.compile(r"^[a-h][1-8][a-h][1-8]$")


def naive_start_moves(side):
    """Independent enumeration of opening moves straight from the rules."""
    board = initial_board()
    drow = 1 if side == WHITE else -1
    moves = []
    for row in range(8):
        for col in range(8):
            if board[square(col, row)] != side:
                continue
            nrow = row + drow
            if not 0 <= nrow < 8:
                continue
            if board[square(col, nrow)] == EMPTY:
                moves.append((square(col, row), square(col, nrow)))
            for dcol in (-1, 1):
                ncol = col + dcol
                if 0 <= ncol < 8 and board[square(ncol, nrow)] != side:
                    moves.append((square(col, row), square(ncol, nrow)))
    return moves


def test_black_has_22_opening_moves():
    assert len(naive_start_moves(BLACK)) == 22
    env = make("breakthrough", 0)
    legal = env.legal_actions(0)
    assert len(legal) == 22
    assert sorted(legal) == sorted(move_token(*m) for m in naive_start_moves(BLACK))


def test_move_grammar_bit_exact():
    env = make("breakthrough", 0)
    for token in env.legal_actions(0):
        assert MOVE_GRAMMAR.match(token)


def test_black_moves_first_from_standard_start():
    env = make("breakthrough", 123)
    assert env.current_players() == (0,)  # seat 0 is Black
    board = env.board
    assert all(board[square(c, r)] == WHITE for r in (0, 1) for c in range(8))
    assert all(board[square(c, r)] == BLACK for r in (6, 7) for c in range(8))


def test_straight_move_into_occupied_square_illegal():
    env = make("breakthrough", 0)
    env.step(("a7a6", NOOP))        # Black advances
    env.step((NOOP, "a2a3"))        # White advances
    env.step(("a6a5", NOOP))
    env.step((NOOP, "a3a4"))
    # a5 and a4 now face each other; straight capture is illegal
    with pytest.raises(IllegalActionError):
        env.step(("a5a4", NOOP))
    # set up a White pawn on b4 and capture it diagonally
    env.step(("b7b6", NOOP))
    env.step((NOOP, "b2b3"))
    env.step(("h7h6", NOOP))
    env.step((NOOP, "b3b4"))
    result = env.step(("a5b4", NOOP))
    assert any(ev.kind == "capture" for ev in result.events)


def test_reaching_back_row_wins():
    env = make("breakthrough", 0)
    board = bytearray(64)
    board[square(0, 1)] = WHITE          # a2, one row from... no: needs row 8
    board[square(0, 6)] = WHITE          # a7, one step from row 8
    board[square(7, 1)] = BLACK          # keep Black a piece
    env.board = board
    env.side_to_move = WHITE
    result = env.step((NOOP, "a7a8"))
    assert result.terminal
    assert result.rewards == (-1.0, 1.0)  # seat 1 is White
    assert any(ev.kind == "breakthrough" for ev in result.events)


def test_elimination_and_no_draws():
    for seed in range(10):
        traj = run_episode("breakthrough", seed, [RandomPolicy(), RandomPolicy()])
        assert traj.terminal
        assert sorted(traj.returns) == [-1.0, 1.0]


def test_advancement_formula_fixed_position():
    # White deepest on row 6, Black deepest on row 5: (5 - 3) / 7
    board = bytearray(64)
    board[square(3, 5)] = WHITE  # d6
    board[square(0, 0)] = WHITE
    board[square(4, 4)] = BLACK  # e5
    board[square(7, 7)] = BLACK
    assert advancement(board, WHITE) == 5
    assert advancement(board, BLACK) == 3
    assert evaluate(board, WHITE) == pytest.approx(2 / 7)
    assert evaluate(board, BLACK) == pytest.approx(-2 / 7)


def test_initial_position_evaluates_to_zero():
    board = initial_board()
    assert evaluate(board, WHITE) == 0.0
    assert evaluate(board, BLACK) == 0.0


def test_mate_in_one_found_at_any_depth():
    board = bytearray(64)
    board[square(2, 6)] = WHITE  # c7: one unblocked step from row 8
    board[square(5, 3)] = BLACK
    board[square(5, 4)] = BLACK
    for depth in (1, 2, 3):
        policy = MinimaxPolicy(depth)
        env = make("breakthrough", 0)
        env.board = bytearray(board)
        env.side_to_move = WHITE
        token = policy.act(env, 1, env.legal_actions(1), None)
        assert token in ("c7b8", "c7c8", "c7d8")


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_row_monotonicity_and_capture_counts(seed):
    """Pieces only ever move forward; captures strictly shrink the victim."""
    env = make("breakthrough", 0)
    rng_policy = RandomPolicy()
    from vsarena.core.types import split_rng

    rng = split_rng(seed, "mono")
    counts = {WHITE: 16, BLACK: 16}
    while not env.terminal:
        seat = env.current_players()[0]
        legal = env.legal_actions(seat)
        token = legal[rng.randrange(len(legal))]
        side = env.side_to_move
        frm_row = int(token[1])
        to_row = int(token[3])
        if side == WHITE:
            assert to_row == frm_row + 1
        else:
            assert to_row == frm_row - 1
        joint = [NOOP, NOOP]
        joint[seat] = token
        result = env.step(tuple(joint))
        new_counts = {
            WHITE: sum(1 for v in env.board if v == WHITE),
            BLACK: sum(1 for v in env.board if v == BLACK),
        }
        captured = any(ev.kind == "capture" for ev in result.events)
        other = BLACK if side == WHITE else WHITE
        if captured:
            assert new_counts[other] == counts[other] - 1
        else:
            assert new_counts == counts
        counts = new_counts


def test_alpha_beta_equals_plain_minimax_on_random_positions():
    """Pruned and unpruned search agree in move and value (depth 3)."""
    from vsarena.agents.search import minimax_best_move
    from vsarena.core.types import split_rng

    rng = split_rng(7, "ab-oracle")
    checked = 0
    attempts = 0
    while checked < 200 and attempts < 400:
        attempts += 1
        env = make("breakthrough", rng.getrandbits(32))
        plies = rng.randrange(0, 30)
        for _ in range(plies):
            if env.terminal:
                break
            seat = env.current_players()[0]
            legal = env.legal_actions(seat)
            joint = [NOOP, NOOP]
            joint[seat] = legal[rng.randrange(len(legal))]
            env.step(tuple(joint))
        if env.terminal:
            continue
        pos = (bytearray(env.board), env.side_to_move)
        pruned_move, pruned_value = minimax_best_move(ADAPTER, pos, 3, prune=True)
        plain_move, plain_value = minimax_best_move(ADAPTER, pos, 3, prune=False)
        assert pruned_move == plain_move
        assert pruned_value == pytest.approx(plain_value)
        checked += 1
    assert checked == 200
