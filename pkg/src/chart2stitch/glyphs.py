"""Built-in icon glyph library.

Glyphs are lists of open or closed polylines normalised to the unit box
[0,1] x [0,1], y up. The vegetable set is deliberately single-stroke and
simplified; stamped icons that carry fine interior detail (see ``corn``)
are expected to trip the detail-loss lint at small stamp sizes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ChartSyntaxError, UnknownTexture
from .geometry import Point

Glyph = tuple[tuple[Point, ...], ...]

# Stroke syntax: "x,y x,y ..." per polyline, one string per stroke.
_ICON_SOURCE: dict[str, list[str]] = {
    # tapered root plus three leaf strokes
    "carrot": [
        "0.35,0.72 0.5,0.05 0.65,0.72 0.35,0.72",
        "0.5,0.72 0.3,0.95",
        "0.5,0.72 0.5,0.97",
        "0.5,0.72 0.7,0.95",
    ],
    # three stalks rising from a shared base
    "celery": [
        "0.35,0.06 0.3,0.65 0.24,0.92",
        "0.5,0.06 0.5,0.7 0.5,0.95",
        "0.65,0.06 0.7,0.65 0.76,0.92",
        "0.35,0.06 0.5,0.02 0.65,0.06",
    ],
    # ear outline with tightly packed kernel rows (complex on purpose)
    "corn": [
        "0.5,0.05 0.72,0.32 0.72,0.68 0.5,0.95 0.28,0.68 0.28,0.32 0.5,0.05",
        "0.44,0.2 0.44,0.8",
        "0.5,0.2 0.5,0.8",
        "0.56,0.2 0.56,0.8",
    ],
    "eggplant": [
        "0.5,0.04 0.66,0.15 0.72,0.42 0.66,0.66 0.5,0.8 0.34,0.66 0.28,0.42 0.34,0.15 0.5,0.04",
        "0.42,0.82 0.5,0.97 0.58,0.82 0.42,0.82",
    ],
    "mushroom": [
        "0.15,0.55 0.2,0.75 0.35,0.9 0.65,0.9 0.8,0.75 0.85,0.55 0.15,0.55",
        "0.4,0.55 0.38,0.1 0.62,0.1 0.6,0.55",
    ],
    # ring plus a centred pimento dash (the simple icon baseline)
    "olive": [
        "0.5,0.08 0.71,0.2 0.78,0.5 0.71,0.8 0.5,0.92 0.29,0.8 0.22,0.5 0.29,0.2 0.5,0.08",
        "0.44,0.5 0.56,0.5",
    ],
    # round body plus a separate calyx zigzag hovering above it
    "tomato": [
        "0.88,0.45 0.829,0.64 0.69,0.779 0.5,0.83 0.31,0.779 0.171,0.64 0.12,0.45"
        " 0.171,0.26 0.31,0.121 0.5,0.07 0.69,0.121 0.829,0.26 0.88,0.45",
        "0.35,0.9 0.45,0.97 0.5,0.86 0.55,0.97 0.65,0.9",
    ],
    # geometric aliases
    "circle": [
        "0.95,0.5 0.89,0.725 0.725,0.89 0.5,0.95 0.275,0.89 0.11,0.725 0.05,0.5"
        " 0.11,0.275 0.275,0.11 0.5,0.05 0.725,0.11 0.89,0.275 0.95,0.5",
    ],
    "square": [
        "0.1,0.1 0.9,0.1 0.9,0.9 0.1,0.9 0.1,0.1",
    ],
    "triangle": [
        "0.5,0.92 0.08,0.1 0.92,0.1 0.5,0.92",
    ],
    "diamond": [
        "0.5,0.95 0.9,0.5 0.5,0.05 0.1,0.5 0.5,0.95",
    ],
    "cross": [
        "0.5,0.08 0.5,0.92",
        "0.08,0.5 0.92,0.5",
    ],
    "star": [
        "0.5,0.96 0.606,0.646 0.938,0.642 0.671,0.444 0.77,0.128 0.5,0.32"
        " 0.23,0.128 0.329,0.444 0.062,0.642 0.394,0.646 0.5,0.96",
    ],
}


def _parse_stroke(text: str) -> tuple[Point, ...]:
    pts = []
    for token in text.split():
        x, y = token.split(",")
        pts.append((float(x), float(y)))
    return tuple(pts)


def _check_unit_box(name: str, glyph: Glyph) -> Glyph:
    for stroke in glyph:
        if len(stroke) < 2:
            raise ChartSyntaxError(f"glyph {name!r}: stroke needs at least 2 points")
        for x, y in stroke:
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise ChartSyntaxError(f"glyph {name!r}: point ({x}, {y}) outside unit box")
    return glyph


_BUILTIN: dict[str, Glyph] = {
    name: _check_unit_box(name, tuple(_parse_stroke(s) for s in strokes))
    for name, strokes in _ICON_SOURCE.items()
}


def builtin_icons() -> dict[str, Glyph]:
    return dict(_BUILTIN)


def lookup_icon(name: str, library: dict[str, Glyph] | None = None) -> Glyph:
    """Fetch a normalised glyph by name; raises UnknownTexture when absent."""
    lib = _BUILTIN if library is None else library
    try:
        return lib[name]
    except KeyError:
        raise UnknownTexture(f"unknown icon {name!r}") from None


def load_glyph_file(path: str | Path) -> dict[str, Glyph]:
    """Read a user glyph file: {"name": [[[x, y], ...], ...], ...}.

    Returns the built-in library extended (and possibly overridden) by the
    file's entries, all validated against the unit box.
    """
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ChartSyntaxError(f"glyph file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ChartSyntaxError(f"glyph file {path}: expected an object of named glyphs")
    lib = builtin_icons()
    for name, strokes in raw.items():
        try:
            glyph = tuple(tuple((float(x), float(y)) for x, y in stroke) for stroke in strokes)
        except (TypeError, ValueError) as exc:
            raise ChartSyntaxError(f"glyph file {path}: bad strokes for {name!r}") from exc
        lib[str(name)] = _check_unit_box(str(name), glyph)
    return lib
