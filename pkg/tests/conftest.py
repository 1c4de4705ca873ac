"""Shared fixtures: chart documents, compiled pipelines, plan generators."""

from __future__ import annotations

import json
import random

import pytest

from chart2stitch import (PlannerParams, Stitch, StitchBlock, StitchPlan,
                          assemble_plan, decompose, layout_chart,
                          parse_chart_spec)
from chart2stitch.plan import JUMP, NORMAL, TRIM

FAMILY_VALUES = {
    "carrots": 4.33, "celery": 2.33, "corn": 4.11, "eggplant": 2.78,
    "mushrooms": 4.00, "olives": 2.56, "tomatos": 3.89,
}

FAMILY_TEXTURES = ["hatch", "hatch_back", "hatch_vertical", "hatch_horizontal",
                   "crosshatch", "hatch_fine", "crosshatch_upright"]


def family_chart_doc(textures: list[str] | None = None, **overrides) -> str:
    textures = textures or FAMILY_TEXTURES
    spec = {
        "title": "How much does my family like vegetables",
        "axis": {"min": 0, "max": 5, "tick_step": 1},
        "plot": {"width_mm": 120, "height_mm": 90, "bar_gap_mm": 2.0, "margin_mm": 10.0},
        "label_height_mm": 5.0,
        "categories": [
            {"name": name, "value": value, "texture": tex}
            for (name, value), tex in zip(FAMILY_VALUES.items(), textures)
        ],
    }
    spec.update(overrides)
    return json.dumps(spec)


def small_chart_doc(texture: str, n: int = 3) -> str:
    """A chart small enough for the default 100 mm hoop."""
    names = ["mon", "tue", "wed", "thu", "fri"][:n]
    values = [3.0, 4.0, 2.5, 3.5, 4.5][:n]
    return json.dumps({
        "title": "week",
        "axis": {"min": 0, "max": 5, "tick_step": 1},
        "plot": {"width_mm": 60, "height_mm": 40, "bar_gap_mm": 2.0, "margin_mm": 8.0},
        "label_height_mm": 5.0,
        "categories": [{"name": nm, "value": v, "texture": texture}
                       for nm, v in zip(names, values)],
    })


UNIT_SQUARE_10 = [(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]


@pytest.fixture(scope="session")
def family_doc() -> str:
    return family_chart_doc()


@pytest.fixture(scope="session")
def family_params() -> PlannerParams:
    return PlannerParams(hoop_width_mm=200.0, hoop_height_mm=200.0)


@pytest.fixture(scope="session")
def family_pipeline(family_doc, family_params):
    spec = parse_chart_spec(family_doc)
    scene = layout_chart(spec)
    decomposed = decompose(scene)
    plan = assemble_plan(decomposed, family_params, name=spec.title)
    return spec, scene, decomposed, plan


def random_feasible_plan(rng: random.Random, hoop_units: int = 500) -> StitchPlan:
    """A random plan obeying the machine invariants.

    Stitches random-walk inside the hoop with deltas within +-121 units;
    trims never move, never start the plan, and jumps never have zero
    displacement (the planner never produces one; a zero jump encodes a
    trim in the stitch file format).
    """
    blocks = []
    x = y = 0
    for _b in range(rng.randint(1, 5)):
        stitches: list[Stitch] = []
        if blocks and rng.random() < 0.6:
            stitches.append(Stitch(x, y, TRIM))
        for _s in range(rng.randint(1, 40)):
            kind = JUMP if rng.random() < 0.15 else NORMAL
            for _try in range(100):
                dx = rng.randint(-121, 121)
                dy = rng.randint(-121, 121)
                if kind == JUMP and dx == 0 and dy == 0:
                    continue
                if abs(x + dx) <= hoop_units and abs(y + dy) <= hoop_units:
                    break
            else:
                dx = dy = -1 if x > 0 else 1
            x += dx
            y += dy
            stitches.append(Stitch(x, y, kind))
        blocks.append(StitchBlock(stitches))
    plan = StitchPlan(blocks)
    plan.recompute_metadata(name=f"random{rng.randint(0, 9999)}")
    return plan


def random_convex_polygon(rng: random.Random,
                          min_extent: float = 5.0,
                          max_extent: float = 50.0) -> list[tuple[float, float]]:
    """Convex polygon with both extents within the requested range
    (vertices in angular order on an ellipse are always convex)."""
    import math
    while True:
        a = rng.uniform(min_extent / 2.0, max_extent / 2.0)
        b = rng.uniform(min_extent / 2.0, max_extent / 2.0)
        k = rng.randint(5, 12)
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        pts = [(a * math.cos(t), b * math.sin(t)) for t in angles]
        out: list[tuple[float, float]] = []
        for p in pts:
            if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-6 for q in out):
                out.append(p)
        if len(out) < 3:
            continue
        xs = [p[0] for p in out]
        ys = [p[1] for p in out]
        if (min_extent <= max(xs) - min(xs) <= max_extent
                and min_extent <= max(ys) - min(ys) <= max_extent):
            return out
