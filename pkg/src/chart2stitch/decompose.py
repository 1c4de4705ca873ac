"""Split a laid-out scene into the three stitch-conversion classes.

Area fills, line-based texture fills and element outlines each take a
different route through the planner, with chart text kept aside for the
stroke font. Texture primitives are generated on the bar region inset by
an outline margin so texture stitches never pierce the outline path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chart import (ROLE_AXIS, ROLE_BAR_FILL, ROLE_BAR_OUTLINE, ROLE_LABEL,
                    ROLE_TICK, ROLE_TITLE, PathGeom, Scene, StampGeom, TextGeom)
from .errors import UnknownTexture
from .geometry import Point, Rect
from .textures import (FillPrimitives, Solid, Stamp, TexturePattern,
                       builtin_textures, fill_region)

DEFAULT_OUTLINE_MARGIN_MM = 0.6


@dataclass(frozen=True)
class AreaFill:
    polygon: tuple[Point, ...]
    source: str


@dataclass(frozen=True)
class TextureFill:
    region: tuple[Point, ...]      # inset region the primitives were clipped to
    primitives: FillPrimitives
    source: str


@dataclass(frozen=True)
class OutlinePath:
    points: tuple[Point, ...]
    source: str


@dataclass(frozen=True)
class TextElement:
    text: str
    anchor: Point
    height_mm: float
    align: str
    source: str


@dataclass
class DecomposedScene:
    area_fills: list[AreaFill] = field(default_factory=list)
    texture_line_fills: list[TextureFill] = field(default_factory=list)
    outlines: list[OutlinePath] = field(default_factory=list)
    text_elements: list[TextElement] = field(default_factory=list)
    bounds: Rect = Rect(0.0, 0.0, 0.0, 0.0)

    def element_count(self) -> int:
        return (len(self.area_fills) + len(self.texture_line_fills)
                + len(self.outlines) + len(self.text_elements))


def decompose(scene: Scene, textures: dict[str, TexturePattern] | None = None,
              outline_margin_mm: float = DEFAULT_OUTLINE_MARGIN_MM) -> DecomposedScene:
    """Assign every scene element to exactly one conversion class."""
    library = builtin_textures() if textures is None else textures
    out = DecomposedScene(bounds=scene.bounds)
    for el in scene.elements:
        if el.role == ROLE_BAR_FILL:
            if el.texture_id not in library:
                raise UnknownTexture(f"{el.source}: texture {el.texture_id!r} not in library")
            pattern = library[el.texture_id]
            rect: Rect = el.geometry
            if isinstance(pattern, Solid):
                out.area_fills.append(AreaFill(tuple(rect.polygon()), el.source))
                continue
            inset = rect.inset(outline_margin_mm)
            if inset.w <= 1e-9 or inset.h <= 1e-9:
                # bar too small to host any texture clear of its outline
                out.texture_line_fills.append(
                    TextureFill(tuple(rect.polygon()), FillPrimitives(), el.source))
                continue
            region = inset.polygon()
            out.texture_line_fills.append(
                TextureFill(tuple(region), fill_region(region, pattern), el.source))
        elif el.role in (ROLE_BAR_OUTLINE, ROLE_AXIS, ROLE_TICK):
            g = el.geometry
            points = tuple(g.outline()) if isinstance(g, Rect) else tuple(g.points)
            out.outlines.append(OutlinePath(points, el.source))
        elif el.role in (ROLE_LABEL, ROLE_TITLE):
            g: TextGeom = el.geometry
            out.text_elements.append(
                TextElement(g.text, g.anchor, g.height_mm, g.align, el.source))
        elif isinstance(el.geometry, StampGeom):
            g = el.geometry
            prims = FillPrimitives(stamps=[Stamp(center=g.center, diameter_mm=g.size_mm)])
            out.texture_line_fills.append(TextureFill((), prims, el.source))
        else:
            raise ValueError(f"element {el.source!r} with role {el.role!r} "
                             "has no conversion class")
    return out
