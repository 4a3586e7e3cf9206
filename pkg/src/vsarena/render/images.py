"""Deterministic raster frames for every game.

All drawing uses flat shapes and the built-in pixel font, so identical state
always produces identical PNG bytes.  Layouts follow the games' panel
conventions: grid games show the map beside a legend and the event-counter
table, Hanabi shows four information panels, Overcooked shows the kitchen
plus a legend, Breakthrough a labeled board, Kuhn the private card and pot,
and Pong the court with the scores on top.
"""

from __future__ import annotations

import io

from PIL import Image, ImageDraw

from .pixelfont import draw_text, text_width

BG = (24, 26, 32)
PANEL = (40, 44, 54)
GRID_LINE = (70, 76, 88)
TEXT = (228, 228, 228)
DIM = (150, 156, 168)

RED = (214, 68, 56)
BLUE = (66, 118, 222)
YELLOW = (232, 194, 48)
GREEN = (76, 176, 80)
WHITE = (235, 235, 235)
DARK = (16, 16, 20)
MONSTER = (88, 52, 110)
ORANGE = (226, 140, 60)
BROWN = (168, 112, 60)

HANABI_COLORS = {
    "R": RED,
    "Y": YELLOW,
    "G": GREEN,
    "W": (210, 210, 210),
    "B": BLUE,
}

PLAYER_COLORS = (RED, BLUE)
CHEF_COLORS = (GREEN, BLUE)


def _png(img: Image.Image) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def _new(width: int = 512, height: int = 512) -> tuple[Image.Image, ImageDraw.ImageDraw]:
    img = Image.new("RGB", (width, height), BG)
    return img, ImageDraw.Draw(img)


# -- grid games --------------------------------------------------------------

_CELL = 64
_GRID_X, _GRID_Y = 16, 48


def _cell_box(x: int, y: int) -> tuple[int, int, int, int]:
    px = _GRID_X + x * _CELL
    py = _GRID_Y + y * _CELL
    return (px, py, px + _CELL, py + _CELL)


def _draw_pacman(draw: ImageDraw.ImageDraw, box, color, shrink: int = 10) -> None:
    x0, y0, x1, y1 = box
    rect = (x0 + shrink, y0 + shrink, x1 - shrink, y1 - shrink)
    draw.pieslice(rect, 30, 330, fill=color)


def _draw_coin(draw: ImageDraw.ImageDraw, box, color) -> None:
    x0, y0, x1, y1 = box
    rect = (x0 + 18, y0 + 18, x1 - 18, y1 - 18)
    draw.ellipse(rect, fill=color, outline=YELLOW, width=3)


def _draw_apple(draw: ImageDraw.ImageDraw, box) -> None:
    x0, y0, x1, y1 = box
    draw.ellipse((x0 + 18, y0 + 22, x1 - 18, y1 - 14), fill=GREEN)
    cx = (x0 + x1) // 2
    draw.rectangle((cx - 2, y0 + 12, cx + 2, y0 + 24), fill=BROWN)


def _draw_monster(draw: ImageDraw.ImageDraw, box) -> None:
    x0, y0, x1, y1 = box
    draw.rectangle((x0 + 14, y0 + 20, x1 - 14, y1 - 12), fill=MONSTER)
    draw.polygon([(x0 + 14, y0 + 20), (x0 + 18, y0 + 8), (x0 + 26, y0 + 20)], fill=MONSTER)
    draw.polygon([(x1 - 14, y0 + 20), (x1 - 18, y0 + 8), (x1 - 26, y0 + 20)], fill=MONSTER)
    draw.rectangle((x0 + 22, y0 + 30, x0 + 28, y0 + 36), fill=WHITE)
    draw.rectangle((x1 - 28, y0 + 30, x1 - 22, y0 + 36), fill=WHITE)


def _draw_block(draw: ImageDraw.ImageDraw, box, color) -> None:
    x0, y0, x1, y1 = box
    draw.rectangle((x0 + 8, y0 + 8, x1 - 8, y1 - 8), fill=color, outline=DARK, width=3)


def _grid_base(draw: ImageDraw.ImageDraw, title: str, size: int = 5) -> None:
    draw_text(draw, (16, 14), title, TEXT, scale=2)
    for y in range(size):
        for x in range(size):
            draw.rectangle(_cell_box(x, y), fill=PANEL, outline=GRID_LINE)


def _grid_players(draw: ImageDraw.ImageDraw, players) -> None:
    if players[0] == players[1]:
        _draw_pacman(draw, _cell_box(*players[0]), PLAYER_COLORS[0])
        x0, y0, x1, y1 = _cell_box(*players[1])
        _draw_pacman(draw, (x0 + 22, y0, x1, y1 - 22), PLAYER_COLORS[1], shrink=4)
    else:
        for i in (0, 1):
            _draw_pacman(draw, _cell_box(*players[i]), PLAYER_COLORS[i])


def _grid_legend(draw: ImageDraw.ImageDraw, rows) -> None:
    x = 360
    y = 52
    draw_text(draw, (x, y - 16), "LEGEND", DIM)
    for label, painter in rows:
        painter((x, y, x + 32, y + 32))
        draw_text(draw, (x + 40, y + 12), label, TEXT)
        y += 40


def _grid_counters(draw: ImageDraw.ImageDraw, env, y: int = 390) -> None:
    draw_text(draw, (16, y - 18), "EVENTS (REWARD): COUNT", DIM)
    for label, reward_desc, count in env.counter_rows():
        draw_text(draw, (16, y), f"{label} ({reward_desc}): {count}", TEXT)
        y += 12
    draw_text(
        draw,
        (16, y + 4),
        f"STEP {env.steps_taken}/{env.spec.max_steps}",
        DIM,
    )


def render_coin(env, agent: int) -> bytes:
    img, draw = _new()
    _grid_base(draw, "COIN DILEMMA")
    _draw_coin(draw, _cell_box(*env.coins["red"]), RED)
    _draw_coin(draw, _cell_box(*env.coins["blue"]), BLUE)
    _grid_players(draw, env.players)
    _grid_legend(
        draw,
        [
            ("RED PLAYER", lambda b: _draw_pacman(draw, b, RED, shrink=4)),
            ("BLUE PLAYER", lambda b: _draw_pacman(draw, b, BLUE, shrink=4)),
            ("RED COIN", lambda b: draw.ellipse(b, fill=RED, outline=YELLOW, width=2)),
            ("BLUE COIN", lambda b: draw.ellipse(b, fill=BLUE, outline=YELLOW, width=2)),
        ],
    )
    _grid_counters(draw, env)
    return _png(img)


def render_hunt(env, agent: int) -> bytes:
    img, draw = _new()
    _grid_base(draw, "MONSTER HUNT")
    for apple in env.apples:
        _draw_apple(draw, _cell_box(*apple))
    _draw_monster(draw, _cell_box(*env.monster))
    _grid_players(draw, env.players)
    _grid_legend(
        draw,
        [
            ("RED PLAYER", lambda b: _draw_pacman(draw, b, RED, shrink=4)),
            ("BLUE PLAYER", lambda b: _draw_pacman(draw, b, BLUE, shrink=4)),
            ("APPLE", lambda b: draw.ellipse(b, fill=GREEN)),
            ("MONSTER", lambda b: draw.rectangle(b, fill=MONSTER)),
        ],
    )
    _grid_counters(draw, env)
    return _png(img)


def render_battle(env, agent: int) -> bytes:
    img, draw = _new()
    _grid_base(draw, "BATTLE OF THE COLORS")
    _draw_block(draw, _cell_box(*env.blocks["red"]), RED)
    _draw_block(draw, _cell_box(*env.blocks["blue"]), BLUE)
    _grid_players(draw, env.players)
    _grid_legend(
        draw,
        [
            ("RED PLAYER", lambda b: _draw_pacman(draw, b, RED, shrink=4)),
            ("BLUE PLAYER", lambda b: _draw_pacman(draw, b, BLUE, shrink=4)),
            ("RED BLOCK", lambda b: draw.rectangle(b, fill=RED)),
            ("BLUE BLOCK", lambda b: draw.rectangle(b, fill=BLUE)),
        ],
    )
    _grid_counters(draw, env)
    return _png(img)


# -- breakthrough -------------------------------------------------------------

def render_breakthrough(env, agent: int) -> bytes:
    from ..games.breakthrough import SIDE_NAMES, WHITE as BT_WHITE

    img, draw = _new()
    cell = 52
    ox, oy = 60, 30
    light, dark_sq = (181, 150, 110), (120, 92, 62)
    for row in range(8):  # row 0 of the loop is rank 8 (top)
        rank = 8 - row
        for col in range(8):
            x0 = ox + col * cell
            y0 = oy + row * cell
            color = light if (rank + col) % 2 else dark_sq
            draw.rectangle((x0, y0, x0 + cell, y0 + cell), fill=color)
            piece = env.board[(rank - 1) * 8 + col]
            if piece:
                fill = WHITE if piece == BT_WHITE else DARK
                outline = DARK if piece == BT_WHITE else WHITE
                draw.ellipse(
                    (x0 + 8, y0 + 8, x0 + cell - 8, y0 + cell - 8),
                    fill=fill,
                    outline=outline,
                    width=2,
                )
        draw_text(draw, (ox - 20, oy + row * cell + cell // 2 - 3), str(rank), TEXT)
    for col in range(8):
        draw_text(
            draw,
            (ox + col * cell + cell // 2 - 3, oy + 8 * cell + 10),
            chr(97 + col),
            TEXT,
        )
    draw_text(
        draw,
        (ox, oy + 8 * cell + 34),
        f"TO MOVE: {SIDE_NAMES[env.side_to_move]}",
        TEXT,
        scale=2,
    )
    return _png(img)


# -- kuhn ---------------------------------------------------------------------

def render_kuhn(env, agent: int) -> bytes:
    img, draw = _new()
    draw_text(draw, (16, 14), "KUHN POKER", TEXT, scale=2)
    draw_text(draw, (16, 48), f"YOU ARE PLAYER {agent}", DIM)
    # private card
    draw.rounded_rectangle((60, 90, 240, 350), radius=16, fill=WHITE, outline=DARK, width=4)
    card = env.deal[agent]
    draw_text(draw, (120, 180), card, DARK, scale=10)
    draw_text(draw, (76, 106), card, DARK, scale=3)
    draw_text(draw, (204, 310), card, DARK, scale=3)
    # pot
    draw_text(draw, (300, 120), f"POT: {env.pot_size()} CHIPS", TEXT, scale=2)
    for i in range(env.pot_size()):
        cx = 300 + (i % 4) * 44
        cy = 170 + (i // 4) * 44
        draw.ellipse((cx, cy, cx + 36, cy + 36), fill=YELLOW, outline=DARK, width=3)
    history = " ".join(
        f"P{i % 2}:{'PASS' if ch == 'P' else 'BET'}" for i, ch in enumerate(env.history)
    )
    draw_text(draw, (16, 400), "HISTORY:", DIM)
    draw_text(draw, (16, 420), history if history else "(EMPTY)", TEXT)
    return _png(img)


# -- tic-tac-toe ---------------------------------------------------------------

def render_tictactoe(env, agent: int) -> bytes:
    from ..games.tictactoe import MARKS

    img, draw = _new()
    draw_text(draw, (16, 14), "TIC-TAC-TOE", TEXT, scale=2)
    cell = 120
    ox, oy = 76, 70
    for i in range(4):
        draw.line((ox + i * cell, oy, ox + i * cell, oy + 3 * cell), fill=TEXT, width=4)
        draw.line((ox, oy + i * cell, ox + 3 * cell, oy + i * cell), fill=TEXT, width=4)
    for idx, value in enumerate(env.board):
        if value is None:
            continue
        col, row = idx % 3, idx // 3
        x0 = ox + col * cell
        y0 = oy + row * cell
        if value == 0:  # X
            draw.line((x0 + 24, y0 + 24, x0 + cell - 24, y0 + cell - 24), fill=RED, width=8)
            draw.line((x0 + cell - 24, y0 + 24, x0 + 24, y0 + cell - 24), fill=RED, width=8)
        else:  # O
            draw.ellipse((x0 + 22, y0 + 22, x0 + cell - 22, y0 + cell - 22), outline=BLUE, width=8)
    draw_text(draw, (76, 452), f"YOU ARE {MARKS[agent]}. TO MOVE: {MARKS[env.to_move]}", TEXT, scale=2)
    return _png(img)


# -- hanabi ---------------------------------------------------------------------

def _hanabi_card(draw, x, y, w, h, color_key, rank, hidden=False) -> None:
    if hidden:
        draw.rounded_rectangle((x, y, x + w, y + h), radius=6, fill=(90, 94, 104), outline=DARK, width=2)
        draw_text(draw, (x + w // 2 - 3, y + h // 2 - 4), "?", TEXT, scale=2)
    else:
        fill = HANABI_COLORS[color_key]
        draw.rounded_rectangle((x, y, x + w, y + h), radius=6, fill=fill, outline=DARK, width=2)
        draw_text(draw, (x + w // 2 - 6, y + h // 2 - 7), str(rank), DARK, scale=3)
        draw_text(draw, (x + 5, y + 5), color_key, DARK)


def render_hanabi(env, agent: int) -> bytes:
    cfg = env.config
    img, draw = _new()
    other = 1 - agent
    draw_text(draw, (16, 10), f"HANABI - PLAYER {agent} VIEW", TEXT, scale=2)
    # panel 1: basic information
    draw_text(
        draw,
        (16, 40),
        f"LIVES: {env.life_tokens}  INFO: {env.info_tokens}  DECK: {len(env.deck)}",
        TEXT,
    )
    # panel 2: fireworks
    draw_text(draw, (16, 62), "FIREWORKS:", DIM)
    fx = 92
    for color in cfg.colors:
        top = env.fireworks[color]
        draw.rectangle((fx, 58, fx + 30, 78), fill=HANABI_COLORS[color], outline=DARK)
        draw_text(draw, (fx + 10, 64), str(top), DARK, scale=1)
        fx += 38
    # panel 3: history
    draw_text(draw, (16, 92), "DISCARDS:", DIM)
    discards = " ".join(f"{c}{r}" for c, r in env.discard_pile) or "(NONE)"
    draw_text(draw, (16, 106), discards[:80], TEXT)
    y = 124
    for p in range(2):
        recent = "; ".join(env.recent_actions[p]) or "(NONE)"
        draw_text(draw, (16, y), f"P{p} RECENT: {recent}"[:80], TEXT)
        y += 14
    # panel 4: hands with knowledge
    card_w, card_h = 56, 72
    draw_text(draw, (16, 170), "YOUR HAND (HIDDEN):", DIM)
    x = 16
    for slot in env.knowledge[agent]:
        _hanabi_card(draw, x, 186, card_w, card_h, "", 0, hidden=True)
        colors = "".join(c for c in cfg.colors if c in slot.colors)
        ranks = "".join(str(r) for r in range(1, cfg.ranks + 1) if r in slot.ranks)
        draw_text(draw, (x, 186 + card_h + 6), colors[:9], TEXT)
        draw_text(draw, (x, 186 + card_h + 18), ranks[:9], TEXT)
        x += card_w + 12
    draw_text(draw, (16, 306), f"PLAYER {other} HAND:", DIM)
    x = 16
    for card, slot in zip(env.hands[other], env.knowledge[other]):
        _hanabi_card(draw, x, 322, card_w, card_h, card[0], card[1])
        colors = "".join(c for c in cfg.colors if c in slot.colors)
        ranks = "".join(str(r) for r in range(1, cfg.ranks + 1) if r in slot.ranks)
        draw_text(draw, (x, 322 + card_h + 6), colors[:9], TEXT)
        draw_text(draw, (x, 322 + card_h + 18), ranks[:9], TEXT)
        x += card_w + 12
    draw_text(draw, (16, 480), f"TO MOVE: PLAYER {env.to_move}", TEXT)
    return _png(img)


# -- overcooked ------------------------------------------------------------------

_TILE = 88
_KX, _KY = 36, 44

_ORIENT_TRI = {
    "UP": ((0.5, 0.08), (0.3, 0.3), (0.7, 0.3)),
    "DOWN": ((0.5, 0.92), (0.3, 0.7), (0.7, 0.7)),
    "LEFT": ((0.08, 0.5), (0.3, 0.3), (0.3, 0.7)),
    "RIGHT": ((0.92, 0.5), (0.7, 0.3), (0.7, 0.7)),
}


def render_overcooked_snapshot(kitchen, snap) -> bytes:
    img, draw = _new()
    draw_text(draw, (16, 12), "OVERCOOKED", TEXT, scale=2)
    for (x, y), tile in sorted(kitchen.tiles.items()):
        x0 = _KX + x * _TILE
        y0 = _KY + y * _TILE
        box = (x0, y0, x0 + _TILE, y0 + _TILE)
        if tile == ".":
            draw.rectangle(box, fill=(58, 62, 72), outline=GRID_LINE)
            continue
        draw.rectangle(box, fill=(108, 112, 122), outline=GRID_LINE)
        cx, cy = x0 + _TILE // 2, y0 + _TILE // 2
        if tile == "O":
            for dx, dy in ((-16, -10), (14, -6), (-2, 12)):
                draw.ellipse((cx + dx - 10, cy + dy - 10, cx + dx + 10, cy + dy + 10), fill=BROWN)
            draw_text(draw, (x0 + 6, y0 + 6), "ONION", DARK)
        elif tile == "D":
            draw.ellipse((cx - 20, cy - 20, cx + 20, cy + 20), fill=WHITE, outline=DARK, width=2)
            draw_text(draw, (x0 + 6, y0 + 6), "DISH", DARK)
        elif tile == "P":
            pot = snap.pot
            draw.ellipse((cx - 24, cy - 18, cx + 24, cy + 26), fill=DARK)
            for i in range(pot.onions):
                ox = cx - 14 + i * 14
                draw.ellipse((ox - 6, cy - 4, ox + 6, cy + 8), fill=BROWN)
            if pot.cooked:
                status = "READY"
            elif pot.cooking:
                status = f"COOK {pot.timer}/5"
            else:
                status = f"{pot.onions}/3"
            draw_text(draw, (x0 + 6, y0 + 6), status, YELLOW)
        elif tile == "S":
            for i in range(0, _TILE, 16):
                draw.line((x0 + i, y0, x0, y0 + i), fill=GREEN, width=4)
                draw.line((x0 + _TILE, y0 + i, x0 + i, y0 + _TILE), fill=GREEN, width=4)
            draw_text(draw, (x0 + 6, y0 + 6), "SERVE", DARK)
    for i, chef in enumerate(snap.chefs):
        x, y = chef.pos
        x0 = _KX + x * _TILE
        y0 = _KY + y * _TILE
        draw.rectangle((x0 + 18, y0 + 18, x0 + _TILE - 18, y0 + _TILE - 18),
                       fill=CHEF_COLORS[i], outline=DARK, width=2)
        tri = [
            (x0 + int(fx * _TILE), y0 + int(fy * _TILE))
            for fx, fy in _ORIENT_TRI[chef.orientation]
        ]
        draw.polygon(tri, fill=WHITE)
        if chef.held:
            color = {"onion": BROWN, "dish": WHITE, "soup": ORANGE}[chef.held]
            draw.ellipse((x0 + _TILE - 34, y0 + 6, x0 + _TILE - 10, y0 + 30),
                         fill=color, outline=DARK, width=2)
        draw_text(draw, (x0 + 22, y0 + _TILE - 16), f"CHEF {i}", DARK)
    ly = _KY + kitchen.height * _TILE + 14
    draw_text(draw, (16, ly), "LEGEND: GRAY=COUNTER  O=ONIONS  D=DISHES", DIM)
    draw_text(draw, (16, ly + 14), "P=POT  S=SERVING WINDOW  TRIANGLE=FACING", DIM)
    draw_text(draw, (16, ly + 28), "CORNER DOT=HELD ITEM", DIM)
    return _png(img)


# -- pong -----------------------------------------------------------------------

def render_pong_snapshot(config, snap) -> bytes:
    scale = 2
    w = config.court_width * scale
    h = config.court_height * scale
    img = Image.new("RGB", (w, h), (0, 0, 0))
    draw = ImageDraw.Draw(img)
    for y in range(0, h, 16):  # center net
        draw.rectangle((w // 2 - 2, y, w // 2 + 2, y + 8), fill=(90, 90, 90))
    draw_text(draw, (w // 4 - 8, 6), str(snap.scores[0]), WHITE, scale=3)
    draw_text(draw, (3 * w // 4 - 8, 6), str(snap.scores[1]), WHITE, scale=3)
    half = config.paddle_length * scale // 2
    for i, plane in enumerate(
        (config.paddle_inset, config.court_width - config.paddle_inset)
    ):
        px = plane * scale
        py = int(snap.paddles[i] * scale)
        draw.rectangle((px - 4, py - half, px + 4, py + half), fill=WHITE)
    bx = int(snap.ball[0] * scale)
    by = int(snap.ball[1] * scale)
    r = config.ball_half * scale
    draw.rectangle((bx - r, by - r, bx + r, by + r), fill=WHITE)
    return _png(img)


# -- dispatch ---------------------------------------------------------------------

_RENDERERS = {
    "coin": render_coin,
    "hunt": render_hunt,
    "battle": render_battle,
    "breakthrough": render_breakthrough,
    "kuhn": render_kuhn,
    "tictactoe": render_tictactoe,
    "hanabi": render_hanabi,
    "tiny-hanabi": render_hanabi,
}


def render_image(env, agent: int = 0) -> bytes:
    """PNG frame of the current state from one agent's viewpoint."""
    name = env.spec.name
    if name == "overcooked":
        return render_overcooked_snapshot(env.kitchen, env.snapshot())
    if name == "pong":
        return render_pong_snapshot(env.config, env.snapshot())
    try:
        renderer = _RENDERERS[name]
    except KeyError:
        raise ValueError(f"no renderer for environment {name!r}") from None
    return renderer(env, agent)
