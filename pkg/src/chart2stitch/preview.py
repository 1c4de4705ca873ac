"""Vector preview and thread-density proxy for stitch plans.

The SVG output is hand-assembled with fixed-precision coordinates so the
same plan always yields byte-identical documents; there are no external
rendering dependencies on this path. The density grid estimates how much
thread lands in each cell and, with a penalty weight, how many trim/jump
endpoints do - the software stand-in for inspecting the reverse side of a
piece for loose-thread mess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .plan import JUMP, NORMAL, TRIM, UNIT_MM, Stitch, StitchPlan


def _fmt(v: float) -> str:
    return f"{v:.2f}"


@dataclass(frozen=True)
class PreviewOptions:
    show_jumps: bool = True
    show_points: bool = False
    stroke_mm: float = 0.3


def _plan_box_mm(plan: StitchPlan) -> tuple[float, float, float, float]:
    box = plan.metadata.bounds_units
    if box is None:
        return (0.0, 0.0, 1.0, 1.0)
    x0, y0, x1, y1 = (v * UNIT_MM for v in box)
    return (x0, y0, max(x1, x0 + 0.1), max(y1, y0 + 0.1))


def render_svg(plan: StitchPlan, options: PreviewOptions | None = None) -> str:
    """Render a plan to SVG text: one solid path per block, dashed jump
    moves, and a cut marker at every trim."""
    opt = options or PreviewOptions()
    x0, y0, x1, y1 = _plan_box_mm(plan)
    w, h = x1 - x0, y1 - y0

    def pt(s: Stitch) -> tuple[float, float]:
        return (s.x * UNIT_MM - x0, y1 - s.y * UNIT_MM)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}mm" '
        f'height="{_fmt(h)}mm" viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        f'<g fill="none" stroke="black" stroke-width="{_fmt(opt.stroke_mm)}" '
        'stroke-linecap="round" stroke-linejoin="round">',
    ]
    prev: Stitch | None = None
    for bi, block in enumerate(plan.blocks):
        solid: list[str] = []
        dashed: list[str] = []
        trims: list[tuple[float, float]] = []
        pen_down = False
        for s in block.stitches:
            x, y = pt(s)
            if s.kind == NORMAL:
                if pen_down:
                    solid.append(f"L{_fmt(x)} {_fmt(y)}")
                else:
                    solid.append(f"M{_fmt(x)} {_fmt(y)}")
                    pen_down = True
            else:
                pen_down = False
                if s.kind == TRIM:
                    trims.append((x, y))
                elif s.kind == JUMP and prev is not None:
                    px, py = pt(prev)
                    dashed.append(f"M{_fmt(px)} {_fmt(py)}L{_fmt(x)} {_fmt(y)}")
            prev = s
        parts.append(f'<g id="block-{bi}" class="{block.role}" '
                     f'data-label="{block.label}">')
        if solid:
            parts.append(f'<path d="{"".join(solid)}"/>')
        if dashed and opt.show_jumps:
            parts.append(f'<path class="jump" stroke-dasharray="1,1" '
                         f'stroke-width="{_fmt(opt.stroke_mm / 2)}" '
                         f'd="{"".join(dashed)}"/>')
        for tx, ty in trims:
            # scissors marker: a small cross with open handles
            parts.append(
                f'<path class="trim" stroke-width="{_fmt(opt.stroke_mm / 2)}" d="'
                f"M{_fmt(tx - 0.8)} {_fmt(ty - 0.8)}L{_fmt(tx + 0.8)} {_fmt(ty + 0.8)}"
                f"M{_fmt(tx - 0.8)} {_fmt(ty + 0.8)}L{_fmt(tx + 0.8)} {_fmt(ty - 0.8)}"
                f"M{_fmt(tx - 1.1)} {_fmt(ty - 0.6)}L{_fmt(tx - 1.1)} {_fmt(ty - 1.0)}"
                f"M{_fmt(tx - 0.6)} {_fmt(ty - 1.1)}L{_fmt(tx - 1.0)} {_fmt(ty - 1.1)}"
                '"/>')
        if opt.show_points:
            for s in block.stitches:
                x, y = pt(s)
                parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" '
                             f'r="{_fmt(opt.stroke_mm / 2)}"/>')
        parts.append("</g>")
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


@dataclass
class DensityGrid:
    origin_mm: tuple[float, float]
    cell_mm: float
    values: list[list[float]]      # rows bottom-up, row-major [row][col]

    @property
    def rows(self) -> int:
        return len(self.values)

    @property
    def cols(self) -> int:
        return len(self.values[0]) if self.values else 0

    def total(self) -> float:
        return sum(sum(row) for row in self.values)

    def max_value(self) -> float:
        return max((max(row) for row in self.values if row), default=0.0)


def render_density(plan: StitchPlan, cell_mm: float = 1.0,
                   jump_penalty_mm: float = 0.0) -> DensityGrid:
    """Thread length laid per grid cell, clipped at cell borders.

    Every trim and jump endpoint additionally deposits `jump_penalty_mm`
    into its cell, so a positive weight surfaces scatter-heavy plans as
    hot spots; with the default weight of zero the grid total equals the
    plan's thread length.
    """
    if cell_mm <= 0:
        raise ValueError("cell_mm must be positive")
    x0, y0, x1, y1 = _plan_box_mm(plan)
    cols = max(1, math.ceil((x1 - x0) / cell_mm - 1e-9))
    rows = max(1, math.ceil((y1 - y0) / cell_mm - 1e-9))
    values = [[0.0] * cols for _ in range(rows)]

    def cell_of(x: float, y: float) -> tuple[int, int]:
        c = min(cols - 1, max(0, int((x - x0) / cell_mm)))
        r = min(rows - 1, max(0, int((y - y0) / cell_mm)))
        return r, c

    def deposit_segment(ax: float, ay: float, bx: float, by: float) -> None:
        length = math.hypot(bx - ax, by - ay)
        if length <= 1e-12:
            return
        # split the segment at every grid line crossing
        ts = {0.0, 1.0}
        for axis, (a, b, lo) in enumerate(((ax, bx, x0), (ay, by, y0))):
            if abs(b - a) < 1e-12:
                continue
            k0 = math.ceil((min(a, b) - lo) / cell_mm)
            while True:
                g = lo + k0 * cell_mm
                if g >= max(a, b) - 1e-12:
                    break
                if g > min(a, b) + 1e-12:
                    ts.add((g - a) / (b - a))
                k0 += 1
        cuts = sorted(ts)
        for t0, t1 in zip(cuts, cuts[1:]):
            if t1 - t0 <= 1e-12:
                continue
            tm = (t0 + t1) / 2.0
            r, c = cell_of(ax + (bx - ax) * tm, ay + (by - ay) * tm)
            values[r][c] += (t1 - t0) * length

    # thread is measured from the machine origin, matching plan metadata
    prev = Stitch(0, 0, JUMP)
    for s in plan.records():
        x, y = s.x * UNIT_MM, s.y * UNIT_MM
        if s.kind == NORMAL:
            deposit_segment(prev.x * UNIT_MM, prev.y * UNIT_MM, x, y)
        elif jump_penalty_mm > 0:
            r, c = cell_of(x, y)
            values[r][c] += jump_penalty_mm
        prev = s
    return DensityGrid(origin_mm=(x0, y0), cell_mm=cell_mm, values=values)


def density_to_svg(grid: DensityGrid) -> str:
    """Grayscale heat map of a density grid (dark cells carry more thread)."""
    cell = grid.cell_mm
    w, h = grid.cols * cell, grid.rows * cell
    peak = grid.max_value()
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}mm" '
        f'height="{_fmt(h)}mm" viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
    ]
    for r, row in enumerate(grid.values):
        for c, v in enumerate(row):
            if v <= 0:
                continue
            shade = 255 - int(round(215 * min(1.0, v / peak))) if peak > 0 else 255
            parts.append(
                f'<rect x="{_fmt(c * cell)}" y="{_fmt((grid.rows - 1 - r) * cell)}" '
                f'width="{_fmt(cell)}" height="{_fmt(cell)}" '
                f'fill="rgb({shade},{shade},{shade})"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
