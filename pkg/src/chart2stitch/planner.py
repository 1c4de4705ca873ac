"""Convert decomposed geometry into an ordered, machine-feasible stitch plan.

Running stitches subdivide path segments evenly; fills lay serpentine rows
across the region and travel along the region boundary between disjoint
spans when they can, jumping otherwise. Block ordering is greedy nearest
neighbour within each conversion class, with class order fixed so fills
are stitched before the outlines that cover their edges.

All geometry enters in millimetres and leaves as integer 0.1 mm stitches;
subdivision re-splits any piece whose quantised length would exceed the
stitch limit, so quantisation never produces an over-long stitch.
"""

from __future__ import annotations

import logging
import math
from dataclasses import replace

from .decompose import DecomposedScene, TextElement
from .errors import DegeneratePath, DegenerateRegion, HoopOverflow
from .fonts import text_strokes
from .geometry import (Point, boundary_path, disk_polygon, dist, lerp,
                       polygon_area, scan_rows)
from .plan import (JUMP, MAX_DELTA_UNITS, NORMAL, ROLE_AREA_FILL, ROLE_OUTLINE,
                   ROLE_PATH, ROLE_TEXT, ROLE_TEXTURE_FILL, TRIM, UNIT_MM,
                   PlannerParams, Stitch, StitchBlock, StitchPlan, to_units)
from .textures import Stamp

log = logging.getLogger(__name__)

_CLASS_RANK = {ROLE_AREA_FILL: 0, ROLE_TEXTURE_FILL: 1, ROLE_OUTLINE: 2,
               ROLE_TEXT: 3, ROLE_PATH: 4}

Move = tuple[Point, str]


def _run_points(a: Point, b: Point, max_stitch_mm: float) -> list[Point]:
    """Evenly subdivided points from a (exclusive) to b (inclusive).

    The piece count starts at ceil(length / max_stitch) and grows until no
    quantised piece exceeds the limit plus half a grid unit.
    """
    length = dist(a, b)
    if length <= 1e-9:
        return [b]
    k = max(1, math.ceil(length / max_stitch_mm - 1e-9))
    limit = max_stitch_mm / UNIT_MM + 0.5
    while True:
        pts = [lerp(a, b, j / k) for j in range(1, k + 1)]
        qs = [(to_units(x), to_units(y)) for x, y in [a] + pts]
        if all(math.hypot(q1[0] - q0[0], q1[1] - q0[1]) <= limit
               for q0, q1 in zip(qs, qs[1:])):
            return pts
        k += 1


def _dedupe(points: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in points:
        if not out or dist(out[-1], p) > 1e-9:
            out.append(p)
    return out


def _block_from_moves(moves: list[Move], role: str, label: str) -> StitchBlock:
    """Quantise millimetre moves, dropping consecutive duplicate records."""
    stitches: list[Stitch] = []
    for (x, y), kind in moves:
        s = Stitch(to_units(x), to_units(y), kind)
        if stitches and stitches[-1] == s:
            continue
        stitches.append(s)
    return StitchBlock(stitches, role=role, label=label)


def _extend_run(moves: list[Move], path: list[Point], max_stitch_mm: float) -> None:
    """Append a subdivided run along `path`, assuming moves ends at path[0]."""
    for a, b in zip(path, path[1:]):
        moves.extend((p, NORMAL) for p in _run_points(a, b, max_stitch_mm))


def plan_running(path: list[Point], params: PlannerParams,
                 role: str = ROLE_OUTLINE, label: str = "") -> StitchBlock:
    """Running stitches along a polyline; every vertex becomes a stitch."""
    pts = _dedupe(list(path))
    if not pts:
        raise DegeneratePath(f"path {label!r} has no points")
    if len(pts) == 1:
        log.warning("single-point path %s: emitting one anchoring stitch", label or "<anon>")
        return _block_from_moves([(pts[0], NORMAL)], role, label)
    moves: list[Move] = [(pts[0], NORMAL)]
    _extend_run(moves, pts, params.max_stitch_mm)
    return _block_from_moves(moves, role, label)


def _connect(moves: list[Move], cur: Point, target: Point,
             region: list[Point] | None, params: PlannerParams,
             jump_allowed: bool) -> None:
    """Bridge from cur to target: boundary travel, running stitches or jumps."""
    if dist(cur, target) <= 1e-9:
        return
    if region is not None:
        walk = boundary_path(region, cur, target)
        if walk is not None:
            _extend_run(moves, walk, params.max_stitch_mm)
            return
        if jump_allowed:
            d_units = dist(cur, target) / UNIT_MM
            k = max(1, math.ceil(d_units / MAX_DELTA_UNITS))
            for j in range(1, k + 1):
                moves.append((lerp(cur, target, j / k), JUMP))
            moves.append((target, NORMAL))  # anchor after the jump
            return
    _extend_run(moves, [cur, target], params.max_stitch_mm)


def plan_fill(region: list[Point], params: PlannerParams,
              role: str = ROLE_AREA_FILL, label: str = "") -> StitchBlock:
    """Serpentine tatami fill of a simple polygon.

    The block opens with a contour run around the region edge: serpentine
    rows alone leave uncovered wedges at shallow extremities (the boundary
    is only travelled on the side where the needle turns), and the edge run
    closes them. Rows then run along fill_angle_deg spaced
    fill_row_spacing_mm apart in alternating directions; disjoint spans are
    connected with running stitches along the region boundary when both
    ends lie on it, falling back to a jump.
    """
    if len(region) < 3 or polygon_area(region) <= 1e-9:
        raise DegenerateRegion(f"fill region {label!r} has no area")
    rows = scan_rows(region, params.fill_angle_deg, params.fill_row_spacing_mm,
                     centered=True)
    moves: list[Move] = [(region[0], NORMAL)]
    _extend_run(moves, list(region) + [region[0]], params.max_stitch_mm)
    cur: Point = region[0]
    laid = False
    for i, (_offset, spans) in enumerate(rows):
        ordered = spans if i % 2 == 0 else [(b, a) for a, b in reversed(spans)]
        for a, b in ordered:
            _connect(moves, cur, a, list(region), params, jump_allowed=True)
            _extend_run(moves, [a, b], params.max_stitch_mm)
            cur = b
            laid = True
    if not laid:
        raise DegenerateRegion(f"fill region {label!r} produced no rows")
    return _block_from_moves(moves, role, label)


def chain_paths(paths: list[list[Point]], params: PlannerParams,
                region: list[Point] | None = None,
                role: str = ROLE_TEXTURE_FILL, label: str = "") -> StitchBlock:
    """Stitch several polylines as one continuous block.

    Paths are chained greedily: the next path is the one whose nearer end
    is closest to the current needle position (entered in reverse when its
    far end is nearer, ties broken by input order). Inside a clip region
    the bridges travel along the region boundary.
    """
    live = [_dedupe(list(p)) for p in paths]
    live = [p for p in live if len(p) >= 2]
    if not live:
        raise DegeneratePath(f"no usable paths for {label!r}")
    remaining = list(enumerate(live))
    moves: list[Move] = []
    cur: Point | None = None
    while remaining:
        if cur is None:
            pick, path = 0, remaining[0][1]
        else:
            best_key = None
            pick = 0
            for pos, (idx, cand) in enumerate(remaining):
                for rev in (0, 1):
                    entry = cand[-1] if rev else cand[0]
                    key = (dist(cur, entry), idx, rev)
                    if best_key is None or key < best_key:
                        best_key, pick = key, pos
            path = remaining[pick][1]
            if best_key[2]:
                path = list(reversed(path))
        del remaining[pick]
        if cur is None:
            moves.append((path[0], NORMAL))
        else:
            _connect(moves, cur, path[0], region, params, jump_allowed=False)
        _extend_run(moves, path, params.max_stitch_mm)
        cur = path[-1]
    return _block_from_moves(moves, role, label)


def plan_stamp(stamp: Stamp, params: PlannerParams, label: str = "") -> StitchBlock:
    """One block for a dot or icon stamp.

    Dots below twice the minimum stitch length become a three-pass tack at
    the centre; larger dots get a miniature serpentine fill of their disk.
    Icon glyph strokes are chained nearest-first into a single block.
    """
    if stamp.is_icon:
        return chain_paths(stamp.strokes_mm(), params,
                           role=ROLE_TEXTURE_FILL, label=label)
    if stamp.diameter_mm < 2.0 * params.min_stitch_mm:
        x, y = to_units(stamp.center[0]), to_units(stamp.center[1])
        return StitchBlock([Stitch(x, y), Stitch(x, y), Stitch(x, y)],
                           role=ROLE_TEXTURE_FILL, label=label)
    return plan_fill(disk_polygon(stamp.center, stamp.diameter_mm), params,
                     role=ROLE_TEXTURE_FILL, label=label)


def plan_text(texts: list[TextElement], params: PlannerParams) -> list[StitchBlock]:
    """One running block per font stroke, per text element."""
    blocks = []
    for t in texts:
        strokes = text_strokes(t.text, t.height_mm, t.anchor, t.align)
        for k, stroke in enumerate(strokes):
            blocks.append(plan_running(stroke, params, role=ROLE_TEXT,
                                       label=f"{t.source}:stroke{k}"))
    return blocks


def _connector(pos: tuple[int, int], start: Stitch, params: PlannerParams,
               is_first: bool) -> list[Stitch]:
    dx, dy = start.x - pos[0], start.y - pos[1]
    d_units = math.hypot(dx, dy)
    if d_units <= 0:
        return []
    conn: list[Stitch] = []
    if not is_first and d_units * UNIT_MM > params.trim_threshold_mm:
        conn.append(Stitch(pos[0], pos[1], TRIM))
    k = max(1, math.ceil(d_units / MAX_DELTA_UNITS))
    for j in range(1, k + 1):
        x = int(math.floor(pos[0] + dx * j / k + 0.5))
        y = int(math.floor(pos[1] + dy * j / k + 0.5))
        conn.append(Stitch(x, y, JUMP))
    return conn


def _travel_units(ordered: list[StitchBlock]) -> float:
    """Inter-block needle travel, counted from the hoop origin."""
    total = 0.0
    pos = (0, 0)
    for b in ordered:
        total += math.hypot(b.start.x - pos[0], b.start.y - pos[1])
        pos = (b.end.x, b.end.y)
    return total


def order_blocks(blocks: list[StitchBlock], params: PlannerParams,
                 name: str = "") -> StitchPlan:
    """Order blocks and join them with trims and jump moves.

    Class order is fixed (area fills, texture fills, outlines, text); inside
    a class the needle greedily visits the block whose start is nearest,
    beginning at the hoop centre. Greedy can occasionally lose to the input
    order, so the cheaper of the two arrangements is kept - reordering never
    increases travel. Inter-block moves longer than the trim threshold get a
    trim before their jumps; every jump move is split so no single delta
    exceeds the encodable range.
    """
    live = [b for b in blocks if b.stitches]
    ordered: list[StitchBlock] = []
    cur = (0, 0)
    ranks = sorted({_CLASS_RANK.get(b.role, len(_CLASS_RANK)) for b in live})
    for rank in ranks:
        remaining = [(i, b) for i, b in enumerate(live)
                     if _CLASS_RANK.get(b.role, len(_CLASS_RANK)) == rank]
        while remaining:
            best = min(range(len(remaining)),
                       key=lambda j: (math.hypot(remaining[j][1].start.x - cur[0],
                                                 remaining[j][1].start.y - cur[1]),
                                      remaining[j][0]))
            _, block = remaining.pop(best)
            ordered.append(block)
            cur = (block.end.x, block.end.y)

    by_class = sorted(live, key=lambda b: _CLASS_RANK.get(b.role, len(_CLASS_RANK)))
    if _travel_units(by_class) < _travel_units(ordered):
        ordered = by_class

    out: list[StitchBlock] = []
    pos = (0, 0)
    for i, block in enumerate(ordered):
        conn = _connector(pos, block.start, params, is_first=(i == 0))
        out.append(StitchBlock(conn + block.stitches, role=block.role, label=block.label))
        pos = (block.end.x, block.end.y)

    plan = StitchPlan(out)
    plan.recompute_metadata(name=name, machine_speed_spm=params.machine_speed_spm)
    half_w = to_units(params.hoop_width_mm / 2.0)
    half_h = to_units(params.hoop_height_mm / 2.0)
    for s in plan.records():
        if abs(s.x) > half_w or abs(s.y) > half_h:
            raise HoopOverflow(
                f"stitch at ({s.x * UNIT_MM:.1f}, {s.y * UNIT_MM:.1f}) mm outside "
                f"{params.hoop_width_mm:g}x{params.hoop_height_mm:g} mm hoop")
    return plan


def assemble_plan(decomposed: DecomposedScene, params: PlannerParams | None = None,
                  name: str = "") -> StitchPlan:
    """Plan every component of a decomposed scene and order the result.

    The scene is centred on the hoop origin before planning so the design
    sits in the middle of the machine's addressable area.
    """
    params = params or PlannerParams()
    b = decomposed.bounds
    sx, sy = -(b.x + b.w / 2.0), -(b.y + b.h / 2.0)

    def sh(points) -> list[Point]:
        return [(x + sx, y + sy) for x, y in points]

    blocks: list[StitchBlock] = []
    for af in decomposed.area_fills:
        blocks.append(plan_fill(sh(af.polygon), params, role=ROLE_AREA_FILL,
                                label=af.source))
    for tf in decomposed.texture_line_fills:
        region = sh(tf.region) if tf.region else None
        if tf.primitives.polylines:
            blocks.append(chain_paths([sh(p) for p in tf.primitives.polylines],
                                      params, region=region,
                                      role=ROLE_TEXTURE_FILL, label=tf.source))
        for k, stamp in enumerate(tf.primitives.stamps):
            moved = replace(stamp, center=(stamp.center[0] + sx, stamp.center[1] + sy))
            blocks.append(plan_stamp(moved, params, label=f"{tf.source}:stamp{k}"))
    for o in decomposed.outlines:
        blocks.append(plan_running(sh(o.points), params, role=ROLE_OUTLINE,
                                   label=o.source))
    shifted_texts = [replace(t, anchor=(t.anchor[0] + sx, t.anchor[1] + sy))
                     for t in decomposed.text_elements]
    blocks.extend(plan_text(shifted_texts, params))

    return order_blocks(blocks, params, name=name)
