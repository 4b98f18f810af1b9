"""Embedded 5x7 bitmap font for chart text (no external font dependency).

Glyphs are stored as 7 rows of 5 bits, MSB = leftmost column. Text is
uppercased before lookup; unknown characters render as '?'.
"""

from __future__ import annotations

import numpy as np

GLYPH_W = 5
GLYPH_H = 7
# horizontal gap between glyphs, in unscaled pixels
GLYPH_GAP = 1

GLYPHS: dict[str, tuple[int, ...]] = {
    "A": (0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11),
    "B": (0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E),
    "C": (0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E),
    "D": (0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E),
    "E": (0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F),
    "F": (0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10),
    "G": (0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0E),
    "H": (0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11),
    "I": (0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E),
    "J": (0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C),
    "K": (0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11),
    "L": (0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F),
    "M": (0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11),
    "N": (0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11),
    "O": (0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E),
    "P": (0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10),
    "Q": (0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D),
    "R": (0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11),
    "S": (0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E),
    "T": (0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04),
    "U": (0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E),
    "V": (0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04),
    "W": (0x11, 0x11, 0x11, 0x15, 0x15, 0x1B, 0x11),
    "X": (0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11),
    "Y": (0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04),
    "Z": (0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F),
    "0": (0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E),
    "1": (0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E),
    "2": (0x0E, 0x11, 0x01, 0x06, 0x08, 0x10, 0x1F),
    "3": (0x0E, 0x11, 0x01, 0x06, 0x01, 0x11, 0x0E),
    "4": (0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02),
    "5": (0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E),
    "6": (0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E),
    "7": (0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08),
    "8": (0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E),
    "9": (0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C),
    " ": (0, 0, 0, 0, 0, 0, 0),
    ".": (0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C),
    ",": (0x00, 0x00, 0x00, 0x00, 0x0C, 0x04, 0x08),
    "-": (0x00, 0x00, 0x00, 0x0E, 0x00, 0x00, 0x00),
    "+": (0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00),
    ":": (0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00),
    "(": (0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02),
    ")": (0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08),
    "/": (0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10),
    "%": (0x18, 0x19, 0x02, 0x04, 0x08, 0x13, 0x03),
    "_": (0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F),
    "=": (0x00, 0x00, 0x1F, 0x00, 0x1F, 0x00, 0x00),
    "?": (0x0E, 0x11, 0x01, 0x02, 0x04, 0x00, 0x04),
}


def text_width(text: str, scale: int = 1) -> int:
    """Pixel width of `text` at the given integer scale."""
    n = len(text)
    if n == 0:
        return 0
    return (n * GLYPH_W + (n - 1) * GLYPH_GAP) * scale


def text_height(scale: int = 1) -> int:
    return GLYPH_H * scale


def draw_text(
    img: np.ndarray,
    x: int,
    y: int,
    text: str,
    color: tuple[int, int, int],
    scale: int = 1,
) -> np.ndarray:
    """Draw `text` onto `img` (H,W,3 uint8) with top-left corner at (x, y).

    Returns a boolean H x W mask of the pixels that were written. Pixels
    falling outside the image are clipped silently.
    """
    h, w = img.shape[:2]
    written = np.zeros((h, w), dtype=bool)
    cx = x
    col = np.asarray(color, dtype=np.uint8)
    for ch in text.upper():
        rows = GLYPHS.get(ch, GLYPHS["?"])
        for ry, bits in enumerate(rows):
            for rx in range(GLYPH_W):
                if not (bits >> (GLYPH_W - 1 - rx)) & 1:
                    continue
                py = y + ry * scale
                px = cx + rx * scale
                y0, y1 = max(py, 0), min(py + scale, h)
                x0, x1 = max(px, 0), min(px + scale, w)
                if y0 < y1 and x0 < x1:
                    img[y0:y1, x0:x1] = col
                    written[y0:y1, x0:x1] = True
        cx += (GLYPH_W + GLYPH_GAP) * scale
    return written


def draw_text_vertical(
    img: np.ndarray,
    x: int,
    y: int,
    text: str,
    color: tuple[int, int, int],
    scale: int = 1,
) -> np.ndarray:
    """Draw `text` stacked vertically (one glyph per line), top at (x, y)."""
    h, w = img.shape[:2]
    written = np.zeros((h, w), dtype=bool)
    cy = y
    for ch in text.upper():
        written |= draw_text(img, x, cy, ch, color, scale)
        cy += (GLYPH_H + 1) * scale
    return written
