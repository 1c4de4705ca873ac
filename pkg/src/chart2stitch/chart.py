"""Declarative chart parsing and physical-unit layout.

The input document is JSON with exactly the top-level keys `title`, `axis`,
`plot`, `categories` and `label_height_mm`; unknown keys are rejected so a
typo cannot silently change a chart. Layout turns the spec into a Scene of
role-tagged geometry in millimetres (y up), with bars growing upward from
the axis baseline.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import fonts
from .errors import (ChartSyntaxError, EmptyChart, LayoutOverflow, RangeError,
                     UnknownTexture)
from .geometry import Point, Rect
from .textures import TexturePattern, builtin_textures

ROLE_BAR_FILL = "bar_fill"
ROLE_BAR_OUTLINE = "bar_outline"
ROLE_AXIS = "axis"
ROLE_TICK = "tick"
ROLE_LABEL = "label"
ROLE_TITLE = "title"


@dataclass(frozen=True)
class Category:
    name: str
    value: float
    texture_id: str


@dataclass(frozen=True)
class AxisSpec:
    min: float
    max: float
    tick_step: float


@dataclass(frozen=True)
class PlotSpec:
    width_mm: float
    height_mm: float
    bar_gap_mm: float
    margin_mm: float


@dataclass(frozen=True)
class ChartSpec:
    title: str
    categories: tuple[Category, ...]
    axis: AxisSpec
    plot: PlotSpec
    label_height_mm: float


@dataclass(frozen=True)
class PathGeom:
    points: tuple[Point, ...]


@dataclass(frozen=True)
class TextGeom:
    text: str
    anchor: Point          # on the baseline
    height_mm: float
    align: str = "center"


@dataclass(frozen=True)
class StampGeom:
    center: Point
    size_mm: float
    glyph: str


@dataclass(frozen=True)
class SceneElement:
    role: str
    geometry: Rect | PathGeom | TextGeom | StampGeom
    source: str
    texture_id: str | None = None


@dataclass(frozen=True)
class Scene:
    elements: tuple[SceneElement, ...]
    bounds: Rect


@dataclass(frozen=True)
class LayoutStyle:
    title_height_mm: float = 5.0
    tick_length_mm: float = 1.5
    label_gap_mm: float = 1.0
    title_gap_mm: float = 2.5


def _require_keys(obj: dict, keys: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ChartSyntaxError(f"{where}: expected an object")
    missing = keys - obj.keys()
    extra = obj.keys() - keys
    if missing:
        raise ChartSyntaxError(f"{where}: missing keys {sorted(missing)}")
    if extra:
        raise ChartSyntaxError(f"{where}: unknown keys {sorted(extra)}")


def _number(obj: dict, key: str, where: str) -> float:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ChartSyntaxError(f"{where}.{key}: expected a finite number, got {v!r}")
    return float(v)


def parse_chart_spec(document: str,
                     textures: dict[str, TexturePattern] | None = None) -> ChartSpec:
    """Parse and validate a chart document against the texture library."""
    library = builtin_textures() if textures is None else textures
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ChartSyntaxError(f"invalid chart document: {exc}") from exc
    _require_keys(raw, {"title", "axis", "plot", "categories", "label_height_mm"}, "chart")
    if not isinstance(raw["title"], str):
        raise ChartSyntaxError("chart.title: expected a string")
    _require_keys(raw["axis"], {"min", "max", "tick_step"}, "axis")
    _require_keys(raw["plot"], {"width_mm", "height_mm", "bar_gap_mm", "margin_mm"}, "plot")

    axis = AxisSpec(_number(raw["axis"], "min", "axis"),
                    _number(raw["axis"], "max", "axis"),
                    _number(raw["axis"], "tick_step", "axis"))
    if not axis.min < axis.max:
        raise ChartSyntaxError("axis.min must be below axis.max")
    if axis.tick_step <= 0:
        raise ChartSyntaxError("axis.tick_step must be positive")

    plot = PlotSpec(_number(raw["plot"], "width_mm", "plot"),
                    _number(raw["plot"], "height_mm", "plot"),
                    _number(raw["plot"], "bar_gap_mm", "plot"),
                    _number(raw["plot"], "margin_mm", "plot"))
    if plot.width_mm <= 0 or plot.height_mm <= 0 or plot.bar_gap_mm <= 0 or plot.margin_mm <= 0:
        raise ChartSyntaxError("plot dimensions must all be positive")
    label_height = _number(raw, "label_height_mm", "chart")
    if label_height <= 0:
        raise ChartSyntaxError("label_height_mm must be positive")

    if not isinstance(raw["categories"], list):
        raise ChartSyntaxError("chart.categories: expected a list")
    if not raw["categories"]:
        raise EmptyChart("chart declares no categories")
    categories = []
    for i, entry in enumerate(raw["categories"]):
        where = f"categories[{i}]"
        _require_keys(entry, {"name", "value", "texture"}, where)
        if not isinstance(entry["name"], str) or not entry["name"]:
            raise ChartSyntaxError(f"{where}.name: expected a non-empty string")
        value = _number(entry, "value", where)
        if not axis.min <= value <= axis.max:
            raise RangeError(f"{where}: value {value} outside axis "
                             f"[{axis.min}, {axis.max}]")
        texture_id = entry["texture"]
        if texture_id not in library:
            raise UnknownTexture(f"{where}: texture {texture_id!r} not in library")
        categories.append(Category(entry["name"], value, texture_id))

    return ChartSpec(title=raw["title"], categories=tuple(categories),
                     axis=axis, plot=plot, label_height_mm=label_height)


def bar_height_mm(spec: ChartSpec, value: float) -> float:
    axis = spec.axis
    return (value - axis.min) / (axis.max - axis.min) * spec.plot.height_mm


def layout_chart(spec: ChartSpec, style: LayoutStyle | None = None) -> Scene:
    """Lay the chart out into a Scene of role-tagged millimetre geometry.

    Bars share a uniform width of (plot_width - (n+1)*gap)/n and rise from
    the baseline; each non-empty bar emits a fill and an outline rectangle
    over the same geometry, while a bar at the axis minimum keeps only a
    flat outline as its baseline mark.
    """
    style = style or LayoutStyle()
    plot = spec.plot
    n = len(spec.categories)
    bar_w = (plot.width_mm - (n + 1) * plot.bar_gap_mm) / n
    if bar_w <= 0:
        raise LayoutOverflow(f"{n} bars with {plot.bar_gap_mm} mm gaps do not fit "
                             f"a {plot.width_mm} mm plot")

    margin = plot.margin_mm
    label_asc = spec.label_height_mm
    label_desc = fonts.DESCENT / fonts.CAP_HEIGHT * spec.label_height_mm
    title_desc = fonts.DESCENT / fonts.CAP_HEIGHT * style.title_height_mm
    x0 = margin
    label_base = margin + label_desc
    y0 = label_base + label_asc + style.label_gap_mm
    title_base = y0 + plot.height_mm + style.title_gap_mm + title_desc
    width = plot.width_mm + 2 * margin
    height = title_base + style.title_height_mm + margin
    bounds = Rect(0.0, 0.0, width, height)

    elements: list[SceneElement] = []
    for i, cat in enumerate(spec.categories):
        bx = x0 + plot.bar_gap_mm + i * (bar_w + plot.bar_gap_mm)
        h = bar_height_mm(spec, cat.value)
        rect = Rect(bx, y0, bar_w, h)
        source = f"bar:{i}:{cat.name}"
        if h > 1e-9:
            elements.append(SceneElement(ROLE_BAR_FILL, rect, source, cat.texture_id))
        elements.append(SceneElement(ROLE_BAR_OUTLINE, rect, source))
        elements.append(SceneElement(
            ROLE_LABEL,
            TextGeom(cat.name, (bx + bar_w / 2.0, label_base), spec.label_height_mm),
            f"label:{i}:{cat.name}"))

    elements.append(SceneElement(
        ROLE_AXIS, PathGeom(((x0, y0), (x0 + plot.width_mm, y0))), "axis:x"))
    elements.append(SceneElement(
        ROLE_AXIS, PathGeom(((x0, y0), (x0, y0 + plot.height_mm))), "axis:y"))

    ticks = 0
    v = spec.axis.min
    while v <= spec.axis.max + 1e-9:
        ty = y0 + (v - spec.axis.min) / (spec.axis.max - spec.axis.min) * plot.height_mm
        elements.append(SceneElement(
            ROLE_TICK, PathGeom(((x0 - style.tick_length_mm, ty), (x0, ty))),
            f"tick:{ticks}"))
        ticks += 1
        v = spec.axis.min + ticks * spec.axis.tick_step

    elements.append(SceneElement(
        ROLE_TITLE,
        TextGeom(spec.title, (x0 + plot.width_mm / 2.0, title_base), style.title_height_mm),
        "title"))

    scene = Scene(tuple(elements), bounds)
    _check_bounds(scene)
    return scene


def _check_bounds(scene: Scene) -> None:
    b = scene.bounds
    for el in scene.elements:
        g = el.geometry
        if isinstance(g, Rect):
            lo = (g.x, g.y)
            hi = (g.x1, g.y1)
        elif isinstance(g, PathGeom):
            xs = [p[0] for p in g.points]
            ys = [p[1] for p in g.points]
            lo, hi = (min(xs), min(ys)), (max(xs), max(ys))
        elif isinstance(g, TextGeom):
            w, asc, desc = fonts.text_extent(g.text, g.height_mm)
            ax, ay = g.anchor
            left = ax - w / 2.0 if g.align == "center" else ax
            lo, hi = (left, ay - desc), (left + w, ay + asc)
        else:
            lo = hi = g.center
        if lo[0] < b.x - 1e-6 or lo[1] < b.y - 1e-6 or hi[0] > b.x1 + 1e-6 or hi[1] > b.y1 + 1e-6:
            raise LayoutOverflow(f"element {el.source!r} exceeds chart bounds: "
                                 f"{lo}..{hi} outside {b}")
