"""Stitch plan model and the native JSON plan format.

Coordinates are integers on a 0.1 mm grid, the native resolution of the
target stitch file format. Geometry stays in floating millimetres through
the planner and is quantised exactly once, at stitch emission. A plan is a
sequence of blocks; the machine consumes the flattened record stream plus
a single terminal end marker, so two plans compare equal when their record
streams match, regardless of how blocks group them.

The native format is line-oriented JSON (one stitch per line) so plans
diff cleanly under version control.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .errors import ChartSyntaxError
from .geometry import Point

UNIT_MM = 0.1
MAX_DELTA_UNITS = 121
PLAN_FORMAT_VERSION = 1

NORMAL = "normal"
JUMP = "jump"
TRIM = "trim"

_KIND_CODE = {NORMAL: "n", JUMP: "j", TRIM: "t"}
_CODE_KIND = {v: k for k, v in _KIND_CODE.items()}


def to_units(mm: float) -> int:
    """Quantise a millimetre coordinate to integer 0.1 mm units (half up)."""
    return int(math.floor(mm / UNIT_MM + 0.5))


def to_mm(units: int) -> float:
    return units * UNIT_MM


@dataclass(frozen=True)
class Stitch:
    x: int
    y: int
    kind: str = NORMAL


@dataclass(frozen=True)
class PlannerParams:
    max_stitch_mm: float = 4.0
    min_stitch_mm: float = 0.3
    fill_row_spacing_mm: float = 0.4
    fill_angle_deg: float = 0.0
    trim_threshold_mm: float = 5.0
    hoop_width_mm: float = 100.0
    hoop_height_mm: float = 100.0
    machine_speed_spm: float = 400.0

    def __post_init__(self):
        if not 0 < self.min_stitch_mm < self.max_stitch_mm <= MAX_DELTA_UNITS * UNIT_MM:
            raise ValueError("need 0 < min_stitch < max_stitch <= 12.1 mm")
        if self.fill_row_spacing_mm <= 0:
            raise ValueError("fill_row_spacing_mm must be positive")
        if self.hoop_width_mm <= 0 or self.hoop_height_mm <= 0:
            raise ValueError("hoop dimensions must be positive")


# planner block classes, in machine order
ROLE_AREA_FILL = "area_fill"
ROLE_TEXTURE_FILL = "texture_fill"
ROLE_OUTLINE = "outline"
ROLE_TEXT = "text"
ROLE_PATH = "path"


@dataclass
class StitchBlock:
    stitches: list[Stitch]
    role: str = ROLE_PATH
    label: str = ""

    @property
    def start(self) -> Stitch:
        return self.stitches[0]

    @property
    def end(self) -> Stitch:
        return self.stitches[-1]

    def normal_stitches(self) -> list[Stitch]:
        return [s for s in self.stitches if s.kind == NORMAL]

    def thread_length_mm(self) -> float:
        """Thread laid by this block: spans entering its normal stitches."""
        total = 0.0
        prev = None
        for s in self.stitches:
            if prev is not None and s.kind == NORMAL:
                total += math.hypot(s.x - prev.x, s.y - prev.y)
            prev = s
        return total * UNIT_MM

    def bbox_units(self, normal_only: bool = True) -> tuple[int, int, int, int] | None:
        pts = self.normal_stitches() if normal_only else self.stitches
        if not pts:
            return None
        xs = [s.x for s in pts]
        ys = [s.y for s in pts]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass
class PlanMetadata:
    name: str = ""
    bounds_units: tuple[int, int, int, int] | None = None
    stitch_count: int = 0
    trim_count: int = 0
    total_thread_length_mm: float = 0.0
    estimated_time_min: float | None = None


@dataclass
class StitchPlan:
    blocks: list[StitchBlock] = field(default_factory=list)
    metadata: PlanMetadata = field(default_factory=PlanMetadata)

    def records(self) -> list[Stitch]:
        """Flat machine record stream (the terminal end marker is implicit)."""
        return [s for b in self.blocks for s in b.stitches]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StitchPlan):
            return NotImplemented
        return self.records() == other.records()

    def jump_count(self) -> int:
        return sum(1 for s in self.records() if s.kind == JUMP)

    def recompute_metadata(self, name: str | None = None,
                           machine_speed_spm: float | None = None) -> None:
        """Refresh metadata from the record stream.

        Thread length sums the moves entering normal stitches, starting
        from the machine origin (0, 0) like the delta file format does.
        """
        records = self.records()
        meta = PlanMetadata(name=self.metadata.name if name is None else name)
        meta.stitch_count = len(records)
        meta.trim_count = sum(1 for s in records if s.kind == TRIM)
        if records:
            xs = [s.x for s in records]
            ys = [s.y for s in records]
            meta.bounds_units = (min(xs), min(ys), max(xs), max(ys))
        px, py = 0, 0
        thread = 0.0
        for s in records:
            if s.kind == NORMAL:
                thread += math.hypot(s.x - px, s.y - py)
            px, py = s.x, s.y
        meta.total_thread_length_mm = thread * UNIT_MM
        if machine_speed_spm:
            meta.estimated_time_min = meta.stitch_count / machine_speed_spm
        else:
            meta.estimated_time_min = self.metadata.estimated_time_min
        self.metadata = meta

    def validate(self, params: PlannerParams | None = None) -> None:
        """Check machine feasibility invariants; raises ValueError on failure."""
        records = self.records()
        px, py = 0, 0
        for i, s in enumerate(records):
            if abs(s.x - px) > MAX_DELTA_UNITS or abs(s.y - py) > MAX_DELTA_UNITS:
                raise ValueError(f"record {i}: delta ({s.x - px}, {s.y - py}) "
                                 f"exceeds +-{MAX_DELTA_UNITS} units")
            if s.kind == TRIM:
                if i == 0:
                    raise ValueError("trim must not be the first record")
                if (s.x, s.y) != (px, py):
                    raise ValueError(f"record {i}: trim must not move")
            px, py = s.x, s.y
        if params is not None:
            half_w = to_units(params.hoop_width_mm / 2.0)
            half_h = to_units(params.hoop_height_mm / 2.0)
            for i, s in enumerate(records):
                if abs(s.x) > half_w or abs(s.y) > half_h:
                    raise ValueError(f"record {i}: ({s.x}, {s.y}) outside hoop")


def write_native_plan(plan: StitchPlan) -> str:
    """Serialise a plan losslessly, one stitch per line."""
    meta = plan.metadata
    doc = {
        "format_version": PLAN_FORMAT_VERSION,
        "metadata": {
            "name": meta.name,
            "bounds_units": list(meta.bounds_units) if meta.bounds_units else None,
            "stitch_count": meta.stitch_count,
            "trim_count": meta.trim_count,
            "total_thread_length_mm": round(meta.total_thread_length_mm, 4),
            "estimated_time_min": (None if meta.estimated_time_min is None
                                   else round(meta.estimated_time_min, 4)),
        },
        "blocks": [
            {
                "role": b.role,
                "label": b.label,
                "stitches": [f"{s.x} {s.y} {_KIND_CODE[s.kind]}" for s in b.stitches],
            }
            for b in plan.blocks
        ],
    }
    return json.dumps(doc, indent=1)


def read_native_plan(text: str) -> StitchPlan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChartSyntaxError(f"invalid plan document: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format_version") != PLAN_FORMAT_VERSION:
        raise ChartSyntaxError("unsupported plan document: missing or wrong format_version")
    try:
        blocks = []
        for b in doc["blocks"]:
            stitches = []
            for line in b["stitches"]:
                xs, ys, code = line.split()
                stitches.append(Stitch(int(xs), int(ys), _CODE_KIND[code]))
            blocks.append(StitchBlock(stitches, role=b.get("role", ROLE_PATH),
                                      label=b.get("label", "")))
        m = doc["metadata"]
        meta = PlanMetadata(
            name=m.get("name", ""),
            bounds_units=tuple(m["bounds_units"]) if m.get("bounds_units") else None,
            stitch_count=m.get("stitch_count", 0),
            trim_count=m.get("trim_count", 0),
            total_thread_length_mm=m.get("total_thread_length_mm", 0.0),
            estimated_time_min=m.get("estimated_time_min"),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ChartSyntaxError(f"malformed plan document: {exc}") from exc
    return StitchPlan(blocks=blocks, metadata=meta)
