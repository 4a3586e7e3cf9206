"""Tic-Tac-Toe rules and the perfect-play draw oracle."""

from __future__ import annotations

from functools import lru_cache

import pytest

from vsarena.agents import MCTSPolicy, RandomPolicy
from vsarena.agents.search import minimax_best_move
from vsarena.core import NOOP, IllegalActionError, make, run_episode
from vsarena.games.tictactoe import ADAPTER, line_winner


def _play(env, cells):
    result = None
    for cell in cells:
        joint = [NOOP, NOOP]
        joint[env.to_move] = str(cell)
        result = env.step(tuple(joint))
    return result


def test_x_completes_row_wins():
    env = make("tictactoe", 0)
    result = _play(env, [0, 3, 1, 4, 2])
    assert result.terminal
    assert result.rewards == (1.0, -1.0)
    assert any(ev.kind == "three-in-a-row" for ev in result.events)


def test_full_board_without_line_draws():
    env = make("tictactoe", 0)
    result = _play(env, [0, 4, 8, 1, 7, 6, 2, 5, 3])
    assert result.terminal
    assert result.rewards == (0.0, 0.0)
    assert any(ev.kind == "draw" for ev in result.events)


def test_occupied_cell_rejected():
    env = make("tictactoe", 0)
    _play(env, [4])
    with pytest.raises(IllegalActionError):
        env.step((NOOP, "4"))


@lru_cache(maxsize=None)
def solve(board: tuple, player: int) -> int:
    """Full-game value for the player to move: +1 win, 0 draw, -1 loss."""
    won = line_winner(list(board))
    if won is not None:
        return 1 if won == player else -1
    if all(v is not None for v in board):
        return 0
    best = -2
    for cell in range(9):
        if board[cell] is None:
            child = list(board)
            child[cell] = player
            best = max(best, -solve(tuple(child), 1 - player))
    return best


def test_perfect_play_draws():
    """Full minimax from the empty board yields a draw (independent oracle
    plus the search module agree)."""
    assert solve((None,) * 9, 0) == 0
    move, value = minimax_best_move(ADAPTER, ([None] * 9, 0), depth=9)
    assert value == 0.0


def test_minimax_never_loses_as_either_seat():
    from vsarena.agents import MinimaxPolicy

    for seed in range(12):
        traj = run_episode("tictactoe", seed, [MinimaxPolicy(9), RandomPolicy()])
        assert traj.returns[0] >= 0.0
        traj = run_episode("tictactoe", seed, [RandomPolicy(), MinimaxPolicy(9)])
        assert traj.returns[1] >= 0.0


def test_mcts_vs_random_over_200_games():
    """MCTS at (c=2.0, 100 sims, 10 rollouts) against random, scored by the
    full-solver oracle.

    Derived result, frozen from the seeded run: this configuration is only
    moderately strong; it concedes a theoretically losing position a handful
    of times (22 avoidable losing-value moves) and actually loses once in
    the 200 games.  The bounds below pin that measured behavior.
    """
    mcts = MCTSPolicy(exploration=2.0, simulations=100, rollouts=10)
    losing_moves = 0
    losses = 0
    games = 0
    for seed in range(200):
        env = make("tictactoe", seed)
        mcts_seat = seed % 2
        from vsarena.core.types import split_rng

        rng = split_rng(seed, "mcts-oracle")
        result = None
        while not env.terminal:
            seat = env.current_players()[0]
            legal = env.legal_actions(seat)
            if seat == mcts_seat:
                token = mcts.act(env, seat, legal, rng)
                board_after = list(env.board)
                board_after[int(token)] = seat
                # value for the opponent after our move; +1 means we lose
                if solve(tuple(board_after), 1 - seat) == 1:
                    if solve(tuple(env.board), seat) >= 0:
                        losing_moves += 1
            else:
                token = legal[rng.randrange(len(legal))]
            joint = [NOOP, NOOP]
            joint[seat] = token
            result = env.step(tuple(joint))
        if result.rewards[mcts_seat] < 0:
            losses += 1
        games += 1
    assert games == 200
    assert losses <= 1
    assert losing_moves <= 30
