"""Breakthrough on an 8x8 board.

White occupies rows 1-2 and advances toward row 8; Black occupies rows 7-8
and advances toward row 1.  Black moves first.  A piece moves one square
straight or diagonally forward; straight moves need an empty destination and
captures happen only diagonally.  Reaching the opposite back row wins (+1/-1).
A side with no pieces or no legal moves loses immediately, so the game can
never draw.

The position core (bytearray board + move tables) is shared by the
environment wrapper and the search agents.
"""

from __future__ import annotations

from ..core.env import Environment, register
from ..core.types import GameEvent, GameSpec, StepResult

EMPTY, WHITE, BLACK = 0, 1, 2
SIDES = (WHITE, BLACK)
SIDE_NAMES = {WHITE: "White", BLACK: "Black"}

# Board index = row * 8 + col with row 0 == rank 1 and col 0 == file 'a'.


def square(col: int, row: int) -> int:
    return row * 8 + col


def square_name(sq: int) -> str:
    return chr(97 + sq % 8) + str(sq // 8 + 1)


def parse_square(text: str) -> int:
    col = ord(text[0]) - 97
    row = int(text[1]) - 1
    if not (0 <= col < 8 and 0 <= row < 8):
        raise ValueError(f"square {text!r} off board")
    return square(col, row)


def move_token(frm: int, to: int) -> str:
    return square_name(frm) + square_name(to)


def _build_targets() -> dict[int, list[tuple[int, ...]]]:
    """targets[side][sq] = (straight, diag, diag...) destination squares."""
    tables: dict[int, list[tuple[int, ...]]] = {}
    for side in SIDES:
        drow = 1 if side == WHITE else -1
        per_square = []
        for sq in range(64):
            col, row = sq % 8, sq // 8
            nrow = row + drow
            if not 0 <= nrow < 8:
                per_square.append(())
                continue
            entries = [square(col, nrow)]  # straight first
            for dcol in (-1, 1):
                ncol = col + dcol
                if 0 <= ncol < 8:
                    entries.append(square(ncol, nrow))
            per_square.append(tuple(entries))
        tables[side] = per_square
    return tables


TARGETS = _build_targets()


def initial_board() -> bytearray:
    board = bytearray(64)
    for sq in range(16):
        board[sq] = WHITE
    for sq in range(48, 64):
        board[sq] = BLACK
    return board


def gen_moves(board: bytearray, side: int) -> list[tuple[int, int]]:
    """All legal (from, to) pairs for ``side``, unordered."""
    moves = []
    targets = TARGETS[side]
    for frm in range(64):
        if board[frm] != side:
            continue
        entries = targets[frm]
        if not entries:
            continue
        if board[entries[0]] == EMPTY:  # straight needs empty
            moves.append((frm, entries[0]))
        for to in entries[1:]:  # diagonal: empty or capture, never own piece
            if board[to] != side:
                moves.append((frm, to))
    return moves


def sorted_moves(board: bytearray, side: int) -> list[tuple[int, int]]:
    """Moves in move-token lexicographic order (column letter, then row)."""
    return sorted(
        gen_moves(board, side),
        key=lambda m: (m[0] % 8, m[0] // 8, m[1] % 8, m[1] // 8),
    )


def apply_move(board: bytearray, move: tuple[int, int]) -> int:
    """Mutate the board; return the captured cell value for undo."""
    frm, to = move
    captured = board[to]
    board[to] = board[frm]
    board[frm] = EMPTY
    return captured


def undo_move(board: bytearray, move: tuple[int, int], captured: int) -> None:
    frm, to = move
    board[frm] = board[to]
    board[to] = captured


def winner(board: bytearray) -> int | None:
    """WHITE/BLACK if decided by goal row or elimination, else None."""
    if WHITE in board[56:64]:
        return WHITE
    if BLACK in board[0:8]:
        return BLACK
    if WHITE not in board:
        return BLACK
    if BLACK not in board:
        return WHITE
    return None


def advancement(board: bytearray, side: int) -> int:
    """Rows advanced from the side's starting back row by its deepest piece."""
    if side == WHITE:
        for row in range(7, -1, -1):
            if WHITE in board[row * 8 : row * 8 + 8]:
                return row
    else:
        for row in range(8):
            if BLACK in board[row * 8 : row * 8 + 8]:
                return 7 - row
    return 0


def evaluate(board: bytearray, perspective: int) -> float:
    """Depth-cutoff heuristic: normalized advancement difference in [-1, 1]."""
    other = WHITE + BLACK - perspective
    return (advancement(board, perspective) - advancement(board, other)) / 7.0


class BreakthroughAdapter:
    """Search-agent view of the position core.

    Positions are (board bytearray, side to move).  ``result`` returns +1 if
    the side to move has already lost (previous move won), matching the
    convention that a terminal position is scored for the player NOT to move.
    """

    def moves(self, pos):
        board, side = pos
        return gen_moves(board, side)

    def ordered_moves(self, pos):
        board, side = pos
        moves = gen_moves(board, side)
        captures = [m for m in moves if board[m[1]] != EMPTY]
        quiets = [m for m in moves if board[m[1]] == EMPTY]
        return captures + quiets

    def root_moves(self, pos):
        board, side = pos
        return sorted_moves(board, side)

    def apply(self, pos, move):
        board, side = pos
        captured = apply_move(board, move)
        return (board, WHITE + BLACK - side), captured

    def undo(self, pos, move, token) -> None:
        board, _side = pos
        undo_move(board, move, token)

    def clone(self, pos):
        board, side = pos
        return (bytearray(board), side)

    def side_to_move(self, pos):
        return pos[1]

    def other_side(self, pos):
        return WHITE + BLACK - pos[1]

    def winner(self, pos):
        return winner(pos[0])

    def evaluate(self, pos, perspective) -> float:
        return evaluate(pos[0], perspective)

    def move_sort_key(self, move):
        frm, to = move
        return (frm % 8, frm // 8, to % 8, to // 8)

    def move_to_token(self, move) -> str:
        return move_token(*move)


ADAPTER = BreakthroughAdapter()

_VOCAB = tuple(
    move_token(frm, to)
    for side in SIDES
    for frm in range(64)
    for to in TARGETS[side][frm]
) + ("NOOP",)

SPEC = GameSpec(
    name="breakthrough",
    num_agents=2,
    interaction_class="competitive",
    max_steps=None,
    action_vocabulary=(_VOCAB, _VOCAB),
)

# Seat 0 is Black (Black moves first), seat 1 is White.
SEAT_SIDE = {0: BLACK, 1: WHITE}
SIDE_SEAT = {BLACK: 0, WHITE: 1}


class BreakthroughEnv(Environment):
    def __init__(self, seed: int):
        super().__init__(SPEC, seed)
        self.board = initial_board()
        self.side_to_move = BLACK
        self.adapter = ADAPTER

    @property
    def position(self):
        return (self.board, self.side_to_move)

    def current_players(self) -> tuple[int, ...]:
        return (SIDE_SEAT[self.side_to_move],)

    def _legal_actions(self, agent: int) -> list[str]:
        return [move_token(*m) for m in sorted_moves(self.board, self.side_to_move)]

    def _apply(self, actions: tuple[str, ...]) -> StepResult:
        seat = SIDE_SEAT[self.side_to_move]
        token = actions[seat]
        frm, to = parse_square(token[:2]), parse_square(token[2:])
        events = []
        if self.board[to] != EMPTY:
            events.append(GameEvent(kind="capture", actors=(seat,), detail=token))
        apply_move(self.board, (frm, to))
        mover_side = self.side_to_move
        other_side = WHITE + BLACK - mover_side
        self.side_to_move = other_side
        goal_row = 7 if mover_side == WHITE else 0
        won: int | None = None
        if to // 8 == goal_row:
            won = mover_side
            events.append(GameEvent(kind="breakthrough", actors=(seat,)))
        elif other_side not in self.board:
            won = mover_side
            events.append(GameEvent(kind="elimination", actors=(seat,)))
        elif not gen_moves(self.board, other_side):
            won = mover_side
            events.append(GameEvent(kind="immobilization", actors=(seat,)))
        if won is not None:
            win_seat = SIDE_SEAT[won]
            rewards = [0.0, 0.0]
            rewards[win_seat] = 1.0
            rewards[1 - win_seat] = -1.0
            return StepResult(
                rewards=tuple(rewards), terminal=True, events=tuple(events)
            )
        return StepResult(rewards=(0.0, 0.0), terminal=False, events=tuple(events))

    def _render_text(self, agent: int) -> str:
        whites = [square_name(sq) for sq in range(64) if self.board[sq] == WHITE]
        blacks = [square_name(sq) for sq in range(64) if self.board[sq] == BLACK]
        return (
            "Breakthrough (8x8). Columns a-h, rows 1-8; h8 is the top-right corner.\n"
            f"You are {SIDE_NAMES[SEAT_SIDE[agent]]}.\n"
            f"White pieces: {', '.join(whites) if whites else '(none)'}.\n"
            f"Black pieces: {', '.join(blacks) if blacks else '(none)'}.\n"
            f"To move: {SIDE_NAMES[self.side_to_move]}."
        )

    def _render_frames(self, agent: int) -> tuple[bytes, ...]:
        from ..render.images import render_image

        return (render_image(self, agent),)


register("breakthrough", BreakthroughEnv)
