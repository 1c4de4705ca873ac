"""Independent oracles used by the test suite.

Everything here is deliberately implemented from scratch, using different
algorithms than the package (dense sampling instead of analytic clipping,
crossing-number containment without boundary tolerance, a table-driven
stitch record decoder transcribed from the public Tajima format notes),
so agreement is a genuine two-implementation cross-check.
"""

from __future__ import annotations

import math

Point = tuple[float, float]


def crossing_inside(p: Point, poly: list[Point]) -> bool:
    """Plain crossing-number point-in-polygon (boundary behaviour undefined)."""
    x, y = p
    inside = False
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        if (y0 <= y < y1) or (y1 <= y < y0):
            t = (y - y0) / (y1 - y0)
            if x0 + t * (x1 - x0) > x:
                inside = not inside
    return inside


def sampled_spans(a: Point, b: Point, poly: list[Point],
                  samples: int = 4000) -> list[tuple[float, float]]:
    """Inside-intervals of segment a-b found by dense midpoint sampling."""
    flags = [crossing_inside((a[0] + (b[0] - a[0]) * ((i + 0.5) / samples),
                              a[1] + (b[1] - a[1]) * ((i + 0.5) / samples)), poly)
             for i in range(samples)]
    spans = []
    start = None
    for i, f in enumerate(flags):
        if f and start is None:
            start = i
        elif not f and start is not None:
            spans.append((start / samples, i / samples))
            start = None
    if start is not None:
        spans.append((start / samples, 1.0))
    return spans


def segment_param(a: Point, b: Point, p: Point) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    l2 = dx * dx + dy * dy
    return ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2 if l2 > 0 else 0.0


def brute_force_travel(starts: list[Point], ends: list[Point],
                       order: list[int]) -> float:
    """Inter-block travel of an ordering, including the origin leg."""
    total = 0.0
    pos = (0.0, 0.0)
    for i in order:
        total += math.hypot(starts[i][0] - pos[0], starts[i][1] - pos[1])
        pos = ends[i]
    return total


def optimal_travel(starts: list[Point], ends: list[Point]) -> float:
    """Exhaustive minimum over all block permutations (n <= 8)."""
    import itertools
    n = len(starts)
    best = math.inf
    for perm in itertools.permutations(range(n)):
        best = min(best, brute_force_travel(starts, ends, list(perm)))
    return best


# --- Tajima record decoder -------------------------------------------------
# Transcribed from the public format description: per-byte bit weights,
# summed independently per axis. Structured as a flat weight table rather
# than the package's balanced-ternary digit model.

_X_WEIGHTS = [
    # (byte, bit, weight)
    (0, 0, +1), (0, 1, -1), (0, 2, +9), (0, 3, -9),
    (1, 0, +3), (1, 1, -3), (1, 2, +27), (1, 3, -27),
    (2, 2, +81), (2, 3, -81),
]
_Y_WEIGHTS = [
    (0, 7, +1), (0, 6, -1), (0, 5, +9), (0, 4, -9),
    (1, 7, +3), (1, 6, -3), (1, 5, +27), (1, 4, -27),
    (2, 5, +81), (2, 4, -81),
]

END = "end"
STITCH = "stitch"
JUMP_FLAG = "jump"
COLOR = "color"


def reference_decode_record(record: bytes) -> tuple[int, int, str]:
    """(dx, dy, flag) for one 3-byte record."""
    assert len(record) == 3
    b = list(record)
    if b[2] == 0xF3:
        return 0, 0, END
    dx = sum(w for byte, bit, w in _X_WEIGHTS if b[byte] >> bit & 1)
    dy = sum(w for byte, bit, w in _Y_WEIGHTS if b[byte] >> bit & 1)
    masked = b[2] & 0xC3
    if masked == 0xC3:
        flag = COLOR
    elif masked == 0x83:
        flag = JUMP_FLAG
    else:
        flag = STITCH
    return dx, dy, flag


def reference_decode_stream(data: bytes) -> list[tuple[int, int, str]]:
    """Decode records after a 512-byte header until the end record."""
    out = []
    for off in range(512, len(data), 3):
        rec = data[off:off + 3]
        dx, dy, flag = reference_decode_record(rec)
        if flag == END:
            break
        out.append((dx, dy, flag))
    return out
