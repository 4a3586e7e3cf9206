"""Game-tree search: depth-limited minimax with alpha-beta, and UCT MCTS.

Both operate on a game adapter (see games.breakthrough.BreakthroughAdapter)
exposing move generation, apply/undo, clone, a winner test, and a heuristic
evaluation.  Values are from the side-to-move's perspective in [-1, 1]; a
terminal position always scores -1 for the player to move (the previous move
won) or 0 on a draw.
"""

from __future__ import annotations

import math
import random

from .base import Policy

WIN, LOSS, DRAW_VALUE = 1.0, -1.0, 0.0


def _terminal_value(adapter, pos) -> float | None:
    """Value for the side to move if the position is already decided."""
    result = adapter.winner(pos)
    if result is None:
        return None
    if result == "draw":
        return DRAW_VALUE
    return WIN if result == adapter.side_to_move(pos) else LOSS


def negamax(adapter, pos, depth: int, alpha: float, beta: float) -> float:
    value = _terminal_value(adapter, pos)
    if value is not None:
        return value
    moves = adapter.ordered_moves(pos)
    if not moves:
        return LOSS  # no legal moves loses
    if depth == 0:
        return adapter.evaluate(pos, adapter.side_to_move(pos))
    best = -math.inf
    for move in moves:
        child, undo = adapter.apply(pos, move)
        score = -negamax(adapter, child, depth - 1, -beta, -alpha)
        adapter.undo(pos, move, undo)
        if score > best:
            best = score
            if best > alpha:
                alpha = best
                if alpha >= beta:
                    break
    return best


def minimax_best_move(adapter, pos, depth: int, prune: bool = True):
    """(move, value) under depth-limited search.

    Root moves are visited in move-token lexicographic order and only a
    strictly better value replaces the incumbent, so ties resolve to the
    lexicographically lowest move whether or not pruning is on.
    """
    if depth < 1:
        raise ValueError("search depth must be >= 1")
    moves = adapter.root_moves(pos)
    if not moves:
        raise ValueError("no legal moves in this position")
    best_move = None
    best = -math.inf
    for move in moves:
        child, undo = adapter.apply(pos, move)
        if prune:
            score = -negamax(adapter, child, depth - 1, -math.inf, -best)
        else:
            score = -_plain_negamax(adapter, child, depth - 1)
        adapter.undo(pos, move, undo)
        if score > best:
            best = score
            best_move = move
    return best_move, best


def _plain_negamax(adapter, pos, depth: int) -> float:
    """Unpruned reference search; the alpha-beta equivalence oracle."""
    value = _terminal_value(adapter, pos)
    if value is not None:
        return value
    moves = adapter.ordered_moves(pos)
    if not moves:
        return LOSS
    if depth == 0:
        return adapter.evaluate(pos, adapter.side_to_move(pos))
    best = -math.inf
    for move in moves:
        child, undo = adapter.apply(pos, move)
        score = -_plain_negamax(adapter, child, depth - 1)
        adapter.undo(pos, move, undo)
        if score > best:
            best = score
    return best


class _TreeNode:
    __slots__ = ("move", "parent", "children", "untried", "visits", "value_sum",
                 "player_just_moved")

    def __init__(self, move, parent, untried, player_just_moved):
        self.move = move
        self.parent = parent
        self.children: list[_TreeNode] = []
        self.untried = untried
        self.visits = 0
        self.value_sum = 0.0
        self.player_just_moved = player_just_moved


def _rollout(adapter, pos, rng: random.Random) -> object:
    """Uniform-random playout; returns the winning side or "draw"."""
    pos = adapter.clone(pos)
    while True:
        result = adapter.winner(pos)
        if result is not None:
            return result
        moves = adapter.moves(pos)
        if not moves:
            # side to move is stuck and loses
            other = adapter.other_side(pos)
            return other
        move = moves[rng.randrange(len(moves))]
        pos, _ = adapter.apply(pos, move)


def mcts_best_move(
    adapter,
    pos,
    rng: random.Random,
    exploration: float = 2.0,
    simulations: int = 100,
    rollouts: int = 10,
):
    """UCT search: ``simulations`` tree iterations, each expanding one node
    and scoring it by the mean of ``rollouts`` random playouts.  The final
    move is the root child with the highest visit count (ties resolve to the
    lowest move key)."""
    root_pos = adapter.clone(pos)
    root = _TreeNode(
        move=None,
        parent=None,
        untried=list(adapter.moves(root_pos)),
        player_just_moved=adapter.other_side(root_pos),
    )
    for _ in range(simulations):
        node = root
        cur = adapter.clone(root_pos)
        # select
        while not node.untried and node.children:
            log_n = math.log(node.visits)
            node = max(
                node.children,
                key=lambda ch: ch.value_sum / ch.visits
                + exploration * math.sqrt(log_n / ch.visits),
            )
            cur, _ = adapter.apply(cur, node.move)
        # expand
        if node.untried and adapter.winner(cur) is None:
            move = node.untried.pop(rng.randrange(len(node.untried)))
            mover = adapter.side_to_move(cur)
            cur, _ = adapter.apply(cur, move)
            child = _TreeNode(
                move=move,
                parent=node,
                untried=list(adapter.moves(cur)),
                player_just_moved=mover,
            )
            node.children.append(child)
            node = child
        # evaluate by random playouts
        total = 0.0
        for _ in range(rollouts):
            result = _rollout(adapter, cur, rng)
            if result == "draw":
                continue
            total += 1.0 if result == node.player_just_moved else -1.0
        value = total / rollouts
        # backpropagate, flipping perspective at each level
        while node is not None:
            node.visits += 1
            node.value_sum += value
            value = -value
            node = node.parent
    if not root.children:
        moves = adapter.moves(root_pos)
        return moves[0] if moves else None
    best = max(
        root.children,
        key=lambda ch: (ch.visits, [-k for k in adapter.move_sort_key(ch.move)]),
    )
    return best.move


class MinimaxPolicy(Policy):
    """Depth-limited alpha-beta over the environment's search adapter."""

    name = "minimax"

    def __init__(self, depth: int = 5):
        self.depth = depth

    def act(self, env, agent, legal, rng):
        move, _ = minimax_best_move(env.adapter, env.position, self.depth)
        return env.adapter.move_to_token(move)


class MCTSPolicy(Policy):
    name = "mcts"

    def __init__(self, exploration: float = 2.0, simulations: int = 100,
                 rollouts: int = 10):
        self.exploration = exploration
        self.simulations = simulations
        self.rollouts = rollouts

    def act(self, env, agent, legal, rng):
        move = mcts_best_move(
            env.adapter,
            env.position,
            rng,
            exploration=self.exploration,
            simulations=self.simulations,
            rollouts=self.rollouts,
        )
        return env.adapter.move_to_token(move)
