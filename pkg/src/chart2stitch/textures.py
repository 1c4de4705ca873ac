"""Texture fill generation: geometric patterns and iconic stamp grids.

Geometric textures build on basic strokes (hatching, crossed hatching,
dot grids); iconic textures stamp a figurative glyph on a grid. Both are
generated in region-local coordinates: scan lines anchor to the region's
extent and stamp grids to its lower-left corner, so a translated region
yields identically translated primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import glyphs
from .errors import ChartSyntaxError, DegenerateRegion, UnknownTexture
from .geometry import (Point, bounds_of, clip_segment_to_polygon, disk_polygon,
                       lerp, point_in_polygon, polygon_area, scan_rows)


@dataclass(frozen=True)
class Solid:
    """Marker pattern: the region is filled with plain tatami rows downstream."""


@dataclass(frozen=True)
class Hatch:
    angle_deg: float = 45.0
    spacing_mm: float = 2.0

    def __post_init__(self):
        if self.spacing_mm <= 0:
            raise ChartSyntaxError("hatch spacing must be positive")


@dataclass(frozen=True)
class CrossHatch:
    angle_deg: float = 45.0
    spacing_mm: float = 2.0

    def __post_init__(self):
        if self.spacing_mm <= 0:
            raise ChartSyntaxError("crosshatch spacing must be positive")


@dataclass(frozen=True)
class Dots:
    diameter_mm: float = 0.8
    spacing_mm: float = 2.0

    def __post_init__(self):
        if self.spacing_mm <= 0 or self.diameter_mm < 0:
            raise ChartSyntaxError("dot texture needs spacing > 0 and diameter >= 0")


@dataclass(frozen=True)
class Icon:
    glyph: glyphs.Glyph
    scale_mm: float = 4.0
    spacing_mm: float = 6.0
    name: str = ""

    def __post_init__(self):
        if self.spacing_mm <= 0 or self.scale_mm <= 0:
            raise ChartSyntaxError("icon texture needs positive scale and spacing")


TexturePattern = Solid | Hatch | CrossHatch | Dots | Icon


@dataclass(frozen=True)
class Stamp:
    """A dot or icon instance placed at a grid point."""

    center: Point
    diameter_mm: float = 0.0          # dots only
    glyph: glyphs.Glyph = ()          # icons only
    scale_mm: float = 0.0
    name: str = ""

    @property
    def is_icon(self) -> bool:
        return bool(self.glyph)

    def strokes_mm(self) -> list[list[Point]]:
        """Icon strokes scaled to scale_mm and centred on the stamp point."""
        cx, cy = self.center
        s = self.scale_mm
        return [[(cx + (x - 0.5) * s, cy + (y - 0.5) * s) for x, y in stroke]
                for stroke in self.glyph]


@dataclass
class FillPrimitives:
    polylines: list[list[Point]] = field(default_factory=list)
    stamps: list[Stamp] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not self.polylines and not self.stamps


def _hatch_polylines(region: list[Point], angle_deg: float, spacing: float) -> list[list[Point]]:
    lines: list[list[Point]] = []
    for _offset, spans in scan_rows(region, angle_deg, spacing):
        for a, b in spans:
            lines.append([a, b])
    return lines


def _sample_inside(points: list[Point], region: list[Point], step: float = 0.5) -> bool:
    """Whether a polyline, densely sampled, lies entirely inside the region."""
    for i in range(len(points)):
        if not point_in_polygon(points[i], region):
            return False
        if i + 1 < len(points):
            a, b = points[i], points[i + 1]
            n = int(math.hypot(b[0] - a[0], b[1] - a[1]) / step)
            for j in range(1, n + 1):
                if not point_in_polygon(lerp(a, b, j / (n + 1)), region):
                    return False
    return True


def _grid_centers(region: list[Point], spacing: float) -> list[Point]:
    xmin, ymin, xmax, ymax = bounds_of(region)
    centers = []
    y = ymin + spacing / 2.0
    while y <= ymax + 1e-9:
        x = xmin + spacing / 2.0
        while x <= xmax + 1e-9:
            centers.append((x, y))
            x += spacing
        y += spacing
    return centers


def fill_region(region: list[Point], pattern: TexturePattern) -> FillPrimitives:
    """Generate fill primitives for a pattern clipped to a simple polygon.

    Hatch lines are clipped to the region; stamps are kept only when they
    fit entirely inside (a clipped icon loses its meaning and stitches
    poorly, so boundary stamps are dropped rather than cut).
    """
    if len(region) < 3 or polygon_area(region) <= 1e-9:
        raise DegenerateRegion("fill region has no area")
    if isinstance(pattern, Solid):
        raise ValueError("solid regions are planned as area fills, not textures")
    if isinstance(pattern, Hatch):
        return FillPrimitives(polylines=_hatch_polylines(region, pattern.angle_deg,
                                                         pattern.spacing_mm))
    if isinstance(pattern, CrossHatch):
        lines = _hatch_polylines(region, pattern.angle_deg, pattern.spacing_mm)
        lines += _hatch_polylines(region, pattern.angle_deg + 90.0, pattern.spacing_mm)
        return FillPrimitives(polylines=lines)
    if isinstance(pattern, Dots):
        stamps = []
        for c in _grid_centers(region, pattern.spacing_mm):
            footprint = disk_polygon(c, pattern.diameter_mm) if pattern.diameter_mm > 0 else [c]
            if all(point_in_polygon(p, region) for p in footprint):
                stamps.append(Stamp(center=c, diameter_mm=pattern.diameter_mm))
        return FillPrimitives(stamps=stamps)
    if isinstance(pattern, Icon):
        stamps = []
        for c in _grid_centers(region, pattern.spacing_mm):
            stamp = Stamp(center=c, glyph=pattern.glyph, scale_mm=pattern.scale_mm,
                          name=pattern.name)
            if all(_sample_inside(s, region) for s in stamp.strokes_mm()):
                stamps.append(stamp)
        return FillPrimitives(stamps=stamps)
    raise TypeError(f"unknown texture pattern {pattern!r}")


def builtin_textures(icons: dict[str, glyphs.Glyph] | None = None) -> dict[str, TexturePattern]:
    """Named pattern library referenced by chart texture ids."""
    icon_lib = glyphs.builtin_icons() if icons is None else icons
    lib: dict[str, TexturePattern] = {
        "solid": Solid(),
        "none": Solid(),
        "hatch": Hatch(45.0, 2.0),
        "hatch_back": Hatch(135.0, 2.0),
        "hatch_horizontal": Hatch(0.0, 2.0),
        "hatch_vertical": Hatch(90.0, 2.0),
        "hatch_fine": Hatch(45.0, 1.2),
        "hatch_wide": Hatch(45.0, 3.2),
        "crosshatch": CrossHatch(45.0, 2.5),
        "crosshatch_upright": CrossHatch(0.0, 2.5),
        "dots": Dots(0.8, 2.0),
        "dots_coarse": Dots(1.5, 3.0),
    }
    for name, glyph in icon_lib.items():
        lib.setdefault(name, Icon(glyph=glyph, name=name))
    return lib


_PATTERN_KINDS = {"solid": Solid, "hatch": Hatch, "crosshatch": CrossHatch,
                  "dots": Dots, "icon": Icon}


def pattern_from_config(spec: dict, icons: dict[str, glyphs.Glyph] | None = None) -> TexturePattern:
    """Build a pattern from a config mapping like {"kind": "hatch", "angle_deg": 30}."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ChartSyntaxError(f"texture config needs a 'kind' key: {spec!r}")
    kind = spec["kind"]
    args = {k: v for k, v in spec.items() if k != "kind"}
    if kind not in _PATTERN_KINDS:
        raise ChartSyntaxError(f"unknown texture kind {kind!r}")
    if kind == "icon":
        glyph_name = args.pop("glyph", None)
        if not glyph_name:
            raise ChartSyntaxError("icon texture config needs a 'glyph' name")
        lib = glyphs.builtin_icons() if icons is None else icons
        args["glyph"] = glyphs.lookup_icon(glyph_name, lib)
        args.setdefault("name", glyph_name)
    try:
        return _PATTERN_KINDS[kind](**args)
    except TypeError as exc:
        raise ChartSyntaxError(f"bad texture config for kind {kind!r}: {exc}") from exc


def get_texture(name: str, library: dict[str, TexturePattern] | None = None) -> TexturePattern:
    lib = builtin_textures() if library is None else library
    try:
        return lib[name]
    except KeyError:
        raise UnknownTexture(f"unknown texture {name!r}") from None
