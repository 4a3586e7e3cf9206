from .images import render_image, render_overcooked_snapshot, render_pong_snapshot
from .pixelfont import draw_text, text_width

__all__ = [
    "draw_text",
    "render_image",
    "render_overcooked_snapshot",
    "render_pong_snapshot",
    "text_width",
]
