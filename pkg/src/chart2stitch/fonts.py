"""Built-in single-stroke vector font for chart text.

Text is always synthesised from these stroke paths and stitched as running
lines; it is never rasterised. Glyphs live on a grid with the baseline at
y=0, cap height 10, x-height 7 and descenders down to -3. A character's
`advance` already includes its right-hand gap, giving the font a narrow
~0.6 advance/cap ratio so chart titles fit their plot width.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .geometry import Point

log = logging.getLogger(__name__)

CAP_HEIGHT = 10.0
DESCENT = 3.0

# advance, strokes ("x,y x,y ..." per stroke)
_FONT_SOURCE: dict[str, tuple[float, list[str]]] = {
    "A": (6, ["0,0 2.5,10", "5,0 2.5,10", "1,3.5 4,3.5"]),
    "B": (6, ["0,0 0,10", "0,10 3.5,10 4.5,9 4.5,6 3.5,5 0,5",
              "0,5 3.5,5 5,3.8 5,1.2 3.5,0 0,0"]),
    "C": (6, ["5,8.5 3.5,10 1.5,10 0,8.5 0,1.5 1.5,0 3.5,0 5,1.5"]),
    "D": (6, ["0,0 0,10", "0,10 3,10 5,8 5,2 3,0 0,0"]),
    "E": (6, ["5,10 0,10 0,0 5,0", "0,5 3.5,5"]),
    "F": (6, ["5,10 0,10 0,0", "0,5 3.5,5"]),
    "G": (6, ["5,8.5 3.5,10 1.5,10 0,8.5 0,1.5 1.5,0 3.5,0 5,1.5 5,4 2.5,4"]),
    "H": (6, ["0,0 0,10", "5,0 5,10", "0,5 5,5"]),
    "I": (3, ["1,0 1,10"]),
    "J": (5, ["4,10 4,1.5 2.5,0 1.5,0 0,1.5"]),
    "K": (6, ["0,0 0,10", "5,10 0,4", "1.8,5.1 5,0"]),
    "L": (6, ["0,10 0,0 5,0"]),
    "M": (7, ["0,0 0,10 3,4 6,10 6,0"]),
    "N": (6, ["0,0 0,10 5,0 5,10"]),
    "O": (6, ["1.5,0 3.5,0 5,1.5 5,8.5 3.5,10 1.5,10 0,8.5 0,1.5 1.5,0"]),
    "P": (6, ["0,0 0,10", "0,10 3.5,10 5,8.5 5,6 3.5,4.5 0,4.5"]),
    "Q": (6, ["1.5,0 3.5,0 5,1.5 5,8.5 3.5,10 1.5,10 0,8.5 0,1.5 1.5,0",
              "3,2.2 5.2,-0.4"]),
    "R": (6, ["0,0 0,10", "0,10 3.5,10 5,8.5 5,6 3.5,4.5 0,4.5", "2.2,4.5 5,0"]),
    "S": (6, ["5,8.5 3.5,10 1.5,10 0,8.7 0,6.9 1.5,5.5 3.5,4.5 5,3.1 5,1.3 3.5,0 1.5,0 0,1.5"]),
    "T": (6, ["0,10 5,10", "2.5,10 2.5,0"]),
    "U": (6, ["0,10 0,1.5 1.5,0 3.5,0 5,1.5 5,10"]),
    "V": (6, ["0,10 2.5,0 5,10"]),
    "W": (7, ["0,10 1.5,0 3,7 4.5,0 6,10"]),
    "X": (6, ["0,0 5,10", "0,10 5,0"]),
    "Y": (6, ["0,10 2.5,5 5,10", "2.5,5 2.5,0"]),
    "Z": (6, ["0,10 5,10 0,0 5,0"]),
    "a": (5, ["4,7 4,0", "4,5.5 2.7,7 1.3,7 0,5.5 0,1.5 1.3,0 2.7,0 4,1.5"]),
    "b": (5, ["0,10 0,0", "0,5.5 1.3,7 2.7,7 4,5.5 4,1.5 2.7,0 1.3,0 0,1.5"]),
    "c": (5, ["4,5.8 2.7,7 1.3,7 0,5.5 0,1.5 1.3,0 2.7,0 4,1.2"]),
    "d": (5, ["4,10 4,0", "4,5.5 2.7,7 1.3,7 0,5.5 0,1.5 1.3,0 2.7,0 4,1.5"]),
    "e": (5, ["0,3.8 4,3.8 4,5.3 2.7,7 1.3,7 0,5.5 0,1.5 1.3,0 2.7,0 4,1.2"]),
    "f": (4, ["3,10 2,10 1.2,9 1.2,0", "0,7 3,7"]),
    "g": (5, ["4,7 4,-1.5 2.7,-3 1.2,-3 0,-2.2",
              "4,5.5 2.7,7 1.3,7 0,5.5 0,1.5 1.3,0 2.7,0 4,1.5"]),
    "h": (5, ["0,10 0,0", "0,5.5 1.3,7 2.7,7 4,5.5 4,0"]),
    "i": (2, ["0.5,0 0.5,7", "0.5,9 0.5,9.7"]),
    "j": (3, ["1.5,7 1.5,-1.5 0.8,-3 0,-2.6", "1.5,9 1.5,9.7"]),
    "k": (5, ["0,10 0,0", "3.5,7 0,3", "1.3,4 3.8,0"]),
    "l": (2, ["0.5,10 0.5,0"]),
    "m": (7, ["0,7 0,0", "0,5.5 1,7 2,7 3,5.5 3,0", "3,5.5 4,7 5,7 6,5.5 6,0"]),
    "n": (5, ["0,7 0,0", "0,5.5 1.3,7 2.7,7 4,5.5 4,0"]),
    "o": (5, ["1.3,0 2.7,0 4,1.5 4,5.5 2.7,7 1.3,7 0,5.5 0,1.5 1.3,0"]),
    "p": (5, ["0,7 0,-3", "0,5.5 1.3,7 2.7,7 4,5.5 4,1.5 2.7,0 1.3,0 0,1.5"]),
    "q": (5, ["4,7 4,-3", "4,5.5 2.7,7 1.3,7 0,5.5 0,1.5 1.3,0 2.7,0 4,1.5"]),
    "r": (4, ["0,7 0,0", "0,5 1.3,7 3,7"]),
    "s": (5, ["4,5.9 2.8,7 1.2,7 0,5.9 1.2,4 2.8,3 4,1.1 2.8,0 1.2,0 0,1.1"]),
    "t": (4, ["1.2,10 1.2,1 2,0 3.2,0.8", "0,7 3,7"]),
    "u": (5, ["0,7 0,1.5 1.3,0 2.7,0 4,1.5", "4,7 4,0"]),
    "v": (5, ["0,7 2,0 4,7"]),
    "w": (7, ["0,7 1.2,0 3,5 4.8,0 6,7"]),
    "x": (5, ["0,0 4,7", "0,7 4,0"]),
    "y": (5, ["0,7 2,0.2", "4,7 1.4,-3"]),
    "z": (5, ["0,7 4,7 0,0 4,0"]),
    "0": (6, ["1.5,0 3.5,0 5,1.5 5,8.5 3.5,10 1.5,10 0,8.5 0,1.5 1.5,0"]),
    "1": (6, ["1,8 2.5,10 2.5,0", "1,0 4,0"]),
    "2": (6, ["0,8.5 1.5,10 3.5,10 5,8.5 5,6.5 0,0 5,0"]),
    "3": (6, ["0,8.5 1.5,10 3.5,10 5,8.5 5,6.5 3.5,5 2,5",
              "3.5,5 5,3.5 5,1.5 3.5,0 1.5,0 0,1.5"]),
    "4": (6, ["3.5,0 3.5,10 0,3 5,3"]),
    "5": (6, ["5,10 0,10 0,5.5 1.5,6 3.5,6 5,4.2 5,1.8 3.5,0 1.5,0 0,1.5"]),
    "6": (6, ["4.5,8.7 3,10 1.5,10 0,8 0,2 1.5,0 3.5,0 5,1.5 5,3.5 3.5,5 1.5,5 0,3.8"]),
    "7": (6, ["0,10 5,10 1.5,0"]),
    "8": (6, ["1.5,5 0.3,6.3 0.3,8.7 1.5,10 3.5,10 4.7,8.7 4.7,6.3 3.5,5"
              " 1.5,5 0,3.6 0,1.4 1.5,0 3.5,0 5,1.4 5,3.6 3.5,5"]),
    "9": (6, ["0.5,1.3 2,0 3.5,0 5,2 5,8 3.5,10 1.5,10 0,8.5 0,6.5 1.5,5 3.5,5 5,6.2"]),
    " ": (4, []),
    ".": (2, ["0.5,0 0.5,0.7"]),
    ",": (2, ["0.7,0.7 0.7,0 0,-1.5"]),
    ":": (2, ["0.5,0 0.5,0.7", "0.5,4.3 0.5,5"]),
    ";": (2, ["0.7,4.3 0.7,5", "0.7,0.7 0.7,0 0,-1.5"]),
    "!": (2, ["0.5,10 0.5,2.5", "0.5,0 0.5,0.7"]),
    "?": (6, ["0,8.5 1.5,10 3.5,10 5,8.5 5,6.5 2.5,5 2.5,3", "2.5,0 2.5,0.7"]),
    "'": (2, ["0.5,10 0.5,8"]),
    '"': (3, ["0.5,10 0.5,8", "1.8,10 1.8,8"]),
    "-": (5, ["0,4 4,4"]),
    "+": (5, ["2,2 2,6", "0,4 4,4"]),
    "(": (3, ["1.8,10.5 0.4,8 0,5 0.4,2 1.8,-0.5"]),
    ")": (3, ["0,10.5 1.4,8 1.8,5 1.4,2 0,-0.5"]),
    "/": (5, ["0,-0.5 4,10.5"]),
    "=": (5, ["0,3 4,3", "0,5 4,5"]),
    "%": (6, ["0,0 5,10", "0.4,7 1.7,7 1.7,9.5 0.4,9.5 0.4,7",
              "3.3,0.5 4.6,0.5 4.6,3 3.3,3 3.3,0.5"]),
}

_MISSING_BOX: tuple[float, list[str]] = (6, ["0.5,0 4.5,0 4.5,10 0.5,10 0.5,0"])


@dataclass(frozen=True)
class FontGlyph:
    advance: float
    strokes: tuple[tuple[Point, ...], ...]


def _parse(entry: tuple[float, list[str]]) -> FontGlyph:
    advance, strokes = entry
    parsed = tuple(
        tuple((float(x), float(y)) for x, y in (tok.split(",") for tok in s.split()))
        for s in strokes
    )
    return FontGlyph(float(advance), parsed)


_GLYPHS: dict[str, FontGlyph] = {ch: _parse(entry) for ch, entry in _FONT_SOURCE.items()}
_MISSING = _parse(_MISSING_BOX)


def has_glyph(ch: str) -> bool:
    return ch in _GLYPHS


def font_glyph(ch: str) -> FontGlyph:
    """Glyph for a character; unknown characters get the box substitute."""
    glyph = _GLYPHS.get(ch)
    if glyph is None:
        log.warning("no stroke glyph for %r, substituting a box", ch)
        return _MISSING
    return glyph


def text_advance(text: str, height_mm: float) -> float:
    scale = height_mm / CAP_HEIGHT
    return sum(font_glyph(ch).advance for ch in text) * scale


def text_extent(text: str, height_mm: float) -> tuple[float, float, float]:
    """(width, ascent, descent) of a line in mm; descent is positive down."""
    return (text_advance(text, height_mm), height_mm,
            DESCENT / CAP_HEIGHT * height_mm)


def text_strokes(text: str, height_mm: float, anchor: Point = (0.0, 0.0),
                 align: str = "left") -> list[list[Point]]:
    """Stroke polylines (mm) for a line of text.

    The anchor sits on the baseline: at the line start for `align="left"`,
    at the midpoint of the advance width for `align="center"`.
    """
    scale = height_mm / CAP_HEIGHT
    x0, y0 = anchor
    if align == "center":
        x0 -= text_advance(text, height_mm) / 2.0
    elif align != "left":
        raise ValueError(f"unknown align {align!r}")
    strokes: list[list[Point]] = []
    pen = x0
    for ch in text:
        glyph = font_glyph(ch)
        for stroke in glyph.strokes:
            strokes.append([(pen + x * scale, y0 + y * scale) for x, y in stroke])
        pen += glyph.advance * scale
    return strokes


def char_stroke_count(ch: str) -> int:
    return len(font_glyph(ch).strokes)
