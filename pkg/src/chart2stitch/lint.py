"""Embroiderability lint: scores and findings for a planned scene.

Machines handle continuous areas and lines well; small scattered elements
are the classic failure mode, leaving messy loose threads on the reverse
side, and tiny text or tightly packed icon detail blurs at stitch
resolution. These checks quantify exactly that: scattered micro-blocks,
icon strokes that merge at the minimum stitch distance, undersized text,
and a trims+jumps density proxy for the back-side mess.

All thresholds are configured defaults; the scores are unitless and only
their ordering is meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .decompose import DecomposedScene, TextureFill
from .errors import DegeneratePath
from .geometry import Point, Rect, bounds_of, dist, lerp, point_segment_distance
from .plan import (ROLE_AREA_FILL, ROLE_TEXTURE_FILL, UNIT_MM, PlannerParams,
                   StitchBlock, StitchPlan)
from .planner import assemble_plan
from .textures import FillPrimitives, Solid, TexturePattern, fill_region

SCATTERED = "SCATTERED"
DETAIL_LOSS = "DETAIL_LOSS"
SMALL_TEXT = "SMALL_TEXT"

_FILL_ROLES = (ROLE_AREA_FILL, ROLE_TEXTURE_FILL)


@dataclass(frozen=True)
class LintThresholds:
    scatter_min_stitches: int = 5
    scatter_min_area_mm2: float = 1.0
    continuity_len_mm: float = 10.0
    text_min_height_mm: float = 5.0
    min_stitch_mm: float = 0.3
    weight_continuity: float = 0.5
    weight_detail: float = 0.3
    weight_scatter: float = 0.2


@dataclass(frozen=True)
class Finding:
    severity: str          # info | warning | error
    code: str
    message: str
    location: str


@dataclass(frozen=True)
class Scores:
    continuity: float
    detail: float
    text_ok: float
    backside_mess: float


@dataclass
class LintReport:
    findings: list[Finding] = field(default_factory=list)
    scores: Scores = Scores(1.0, 1.0, 1.0, 0.0)

    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "warning"]

    def summary(self) -> str:
        lines = [
            f"continuity    {self.scores.continuity:6.3f}",
            f"detail        {self.scores.detail:6.3f}",
            f"text_ok       {self.scores.text_ok:6.3f}",
            f"backside_mess {self.scores.backside_mess:6.2f} (trims+jumps per cm2)",
            f"findings      {len(self.findings)}",
        ]
        for f in self.findings:
            lines.append(f"  [{f.severity}] {f.code} at {f.location}: {f.message}")
        return "\n".join(lines)


def _block_footprint_mm2(block: StitchBlock) -> float:
    box = block.bbox_units()
    if box is None:
        return 0.0
    x0, y0, x1, y1 = box
    return (x1 - x0) * UNIT_MM * ((y1 - y0) * UNIT_MM)


def _sample_stroke(stroke: list[Point], step: float) -> list[Point]:
    pts = [stroke[0]]
    for a, b in zip(stroke, stroke[1:]):
        n = max(1, math.ceil(dist(a, b) / step))
        pts.extend(lerp(a, b, j / n) for j in range(1, n + 1))
    return pts


def _stroke_merges_into(src: list[Point], dst: list[Point], tol: float) -> bool:
    """True when every point of src lies within tol of dst."""
    samples = _sample_stroke(src, max(tol / 4.0, 0.02))
    for p in samples:
        d = min(point_segment_distance(p, a, b) for a, b in zip(dst, dst[1:]))
        if d >= tol:
            return False
    return True


def _icon_detail_lost(strokes: list[list[Point]], tol: float) -> bool:
    """Any pair of distinct strokes closer than tol everywhere."""
    for i, si in enumerate(strokes):
        for j, sj in enumerate(strokes):
            if i != j and len(sj) >= 2 and _stroke_merges_into(si, sj, tol):
                return True
    return False


def lint_scene(decomposed: DecomposedScene, plan: StitchPlan,
               thresholds: LintThresholds | None = None) -> LintReport:
    """Report embroiderability findings for a scene and its plan.

    Lint never fails: every issue becomes a finding with a location, and
    scores summarise the plan as a whole.
    """
    t = thresholds or LintThresholds()
    findings: list[Finding] = []

    for i, block in enumerate(plan.blocks):
        if block.role not in _FILL_ROLES:
            continue
        count = len(block.normal_stitches())
        area = _block_footprint_mm2(block)
        if count < t.scatter_min_stitches or area < t.scatter_min_area_mm2:
            findings.append(Finding(
                "warning", SCATTERED,
                f"block of {count} stitches over {area:.2f} mm2 will scatter "
                "loose threads", block.label or f"block:{i}"))

    icon_total = icon_lost = 0
    for tf in decomposed.texture_line_fills:
        for k, stamp in enumerate(tf.primitives.stamps):
            if not stamp.is_icon:
                continue
            icon_total += 1
            if _icon_detail_lost(stamp.strokes_mm(), t.min_stitch_mm):
                icon_lost += 1
                findings.append(Finding(
                    "warning", DETAIL_LOSS,
                    f"icon {stamp.name or 'glyph'} at {stamp.scale_mm:g} mm: "
                    "strokes sit closer than one stitch and will merge",
                    f"{tf.source}:stamp{k}"))

    text_total = text_small = 0
    for te in decomposed.text_elements:
        text_total += 1
        if te.height_mm < t.text_min_height_mm:
            text_small += 1
            findings.append(Finding(
                "warning", SMALL_TEXT,
                f"text {te.height_mm:g} mm tall is below the {t.text_min_height_mm:g} mm "
                "stitchable size", te.source))

    total_thread = 0.0
    long_thread = 0.0
    for block in plan.blocks:
        length = block.thread_length_mm()
        total_thread += length
        if length >= t.continuity_len_mm:
            long_thread += length
    continuity = long_thread / total_thread if total_thread > 0 else 1.0

    detail = 1.0 - icon_lost / icon_total if icon_total else 1.0
    text_ok = 1.0 - text_small / text_total if text_total else 1.0

    box = None
    for block in plan.blocks:
        b = block.bbox_units()
        if b is None:
            continue
        box = b if box is None else (min(box[0], b[0]), min(box[1], b[1]),
                                     max(box[2], b[2]), max(box[3], b[3]))
    if box is None:
        footprint_cm2 = 0.0
    else:
        footprint_cm2 = ((box[2] - box[0]) * UNIT_MM / 10.0) * ((box[3] - box[1]) * UNIT_MM / 10.0)
    moves = plan.metadata.trim_count + plan.jump_count()
    backside = moves / max(footprint_cm2, 1e-2) if moves else 0.0

    return LintReport(findings=findings,
                      scores=Scores(continuity, detail, text_ok, backside))


@dataclass(frozen=True)
class TextureRank:
    index: int
    name: str
    score: float
    report: LintReport


def _texture_scene(region: list[Point], primitives: FillPrimitives,
                   source: str) -> DecomposedScene:
    xmin, ymin, xmax, ymax = bounds_of(region)
    scene = DecomposedScene(bounds=Rect(xmin, ymin, xmax - xmin, ymax - ymin))
    scene.texture_line_fills.append(TextureFill(tuple(region), primitives, source))
    return scene


def rank_textures(patterns: list[TexturePattern], region: list[Point],
                  thresholds: LintThresholds | None = None,
                  params: PlannerParams | None = None) -> list[TextureRank]:
    """Order patterns by how well they should embroider on a region.

    Each pattern is rendered on the region alone, planned, and linted; the
    composite score weighs continuity, icon detail survival and a scatter
    penalty. Only the resulting order is meaningful, not the magnitudes.
    """
    t = thresholds or LintThresholds()
    params = params or PlannerParams()
    ranked = []
    for i, pattern in enumerate(patterns):
        name = getattr(pattern, "name", "") or type(pattern).__name__.lower()
        if isinstance(pattern, Solid):
            prims = FillPrimitives(polylines=[list(region) + [region[0]]])
        else:
            prims = fill_region(region, pattern)
        scene = _texture_scene(list(region), prims, f"texture:{i}:{name}")
        try:
            plan = assemble_plan(scene, params, name=name)
        except DegeneratePath:
            # pattern renders nothing on this region
            ranked.append(TextureRank(i, name, 0.0, LintReport()))
            continue
        report = lint_scene(scene, plan, t)
        fill_blocks = [b for b in plan.blocks if b.role in _FILL_ROLES]
        scattered = sum(1 for f in report.findings if f.code == SCATTERED)
        scatter_frac = scattered / len(fill_blocks) if fill_blocks else 0.0
        score = (t.weight_continuity * report.scores.continuity
                 + t.weight_detail * report.scores.detail
                 + t.weight_scatter * (1.0 - scatter_frac))
        ranked.append(TextureRank(i, name, score, report))
    ranked.sort(key=lambda r: (-r.score, r.index))
    return ranked
