"""Tic-Tac-Toe on a 3x3 board; the mini competitive game.

Cells are addressed 0..8 row-major.  Agent 0 plays X and moves first; three
in a row wins (+1/-1), a full board draws (0, 0).
"""

from __future__ import annotations

from ..core.env import Environment, register
from ..core.types import GameEvent, GameSpec, StepResult

LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (2, 4, 6),
)
MARKS = ("X", "O")

_VOCAB = tuple(str(i) for i in range(9)) + ("NOOP",)
SPEC = GameSpec(
    name="tictactoe",
    num_agents=2,
    interaction_class="competitive",
    max_steps=None,
    action_vocabulary=(_VOCAB, _VOCAB),
)


def line_winner(board: list[int | None]) -> int | None:
    for a, b, c in LINES:
        if board[a] is not None and board[a] == board[b] == board[c]:
            return board[a]
    return None


class TicTacToeAdapter:
    """Search view: positions are (board list, player to move)."""

    def moves(self, pos):
        board, _ = pos
        return [i for i in range(9) if board[i] is None]

    ordered_moves = moves
    root_moves = moves

    def apply(self, pos, move):
        board, player = pos
        board[move] = player
        return (board, 1 - player), move

    def undo(self, pos, move, undo_token) -> None:
        pos[0][move] = None

    def clone(self, pos):
        return (list(pos[0]), pos[1])

    def side_to_move(self, pos):
        return pos[1]

    def other_side(self, pos):
        return 1 - pos[1]

    def winner(self, pos):
        board, _ = pos
        won = line_winner(board)
        if won is not None:
            return won
        if all(v is not None for v in board):
            return "draw"
        return None

    def evaluate(self, pos, perspective) -> float:
        return 0.0  # the full game tree is shallow; search to the end instead

    def move_sort_key(self, move):
        return (move,)

    def move_to_token(self, move) -> str:
        return str(move)


ADAPTER = TicTacToeAdapter()


class TicTacToeEnv(Environment):
    def __init__(self, seed: int):
        super().__init__(SPEC, seed)
        self.board: list[int | None] = [None] * 9
        self.to_move = 0
        self.adapter = ADAPTER

    @property
    def position(self):
        return (self.board, self.to_move)

    def current_players(self) -> tuple[int, ...]:
        return (self.to_move,)

    def _legal_actions(self, agent: int) -> list[str]:
        return [str(i) for i in range(9) if self.board[i] is None]

    def _apply(self, actions: tuple[str, ...]) -> StepResult:
        mover = self.to_move
        cell = int(actions[mover])
        self.board[cell] = mover
        self.to_move = 1 - mover
        winner = line_winner(self.board)
        if winner is not None:
            rewards = (1.0, -1.0) if winner == 0 else (-1.0, 1.0)
            event = GameEvent(kind="three-in-a-row", actors=(winner,))
            return StepResult(rewards=rewards, terminal=True, events=(event,))
        if all(v is not None for v in self.board):
            return StepResult(
                rewards=(0.0, 0.0),
                terminal=True,
                events=(GameEvent(kind="draw", actors=(0, 1)),),
            )
        return StepResult(rewards=(0.0, 0.0), terminal=False)

    def _render_text(self, agent: int) -> str:
        rows = []
        for r in range(3):
            cells = []
            for c in range(3):
                v = self.board[3 * r + c]
                cells.append("." if v is None else MARKS[v])
            rows.append(" ".join(cells))
        grid = "\n".join(rows)
        return (
            f"Tic-Tac-Toe. You are {MARKS[agent]}.\n"
            f"Board (cells 0-8, row-major):\n{grid}\n"
            f"To move: {MARKS[self.to_move]}."
        )

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        from ..render.images import render_image

        return (render_image(self, agent),)


register("tictactoe", TicTacToeEnv)
