"""Grid rendering: ascii glyphs or a binary portable pixmap (PPM)."""

from __future__ import annotations

from .grids import Grid

ASCII_GLYPHS = ".123456789"

# Conventional ARC display palette, colors 0..9.
PALETTE = (
    (0, 0, 0),        # 0 black
    (0, 116, 217),    # 1 blue
    (255, 65, 54),    # 2 red
    (46, 204, 64),    # 3 green
    (255, 220, 0),    # 4 yellow
    (170, 170, 170),  # 5 grey
    (240, 18, 190),   # 6 fuchsia
    (255, 133, 27),   # 7 orange
    (127, 219, 255),  # 8 azure
    (135, 12, 37),    # 9 maroon
)


def render_ascii(grid: Grid) -> str:
    """One line per row, one distinct glyph per color."""
    return "\n".join("".join(ASCII_GLYPHS[v] for v in row) for row in grid.cells)


def render_ppm(grid: Grid, scale: int = 10) -> bytes:
    """Binary PPM scaled by an integer factor."""
    if scale < 1:
        raise ValueError("scale must be >= 1")
    width = grid.width * scale
    height = grid.height * scale
    header = f"P6\n{width} {height}\n255\n".encode()
    body = bytearray()
    for row in grid.cells:
        scan = bytearray()
        for value in row:
            scan += bytes(PALETTE[value]) * scale
        body += bytes(scan) * scale
    return header + bytes(body)


def render_grid(grid: Grid, mode: str, scale: int = 10):
    if mode == "ascii":
        return render_ascii(grid)
    if mode == "image":
        return render_ppm(grid, scale)
    raise ValueError(f"unknown render mode {mode!r}")
