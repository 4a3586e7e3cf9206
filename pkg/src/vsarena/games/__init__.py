from . import breakthrough, grid, hanabi, kuhn, overcooked, pong, tictactoe

__all__ = [
    "breakthrough",
    "grid",
    "hanabi",
    "kuhn",
    "overcooked",
    "pong",
    "tictactoe",
]
